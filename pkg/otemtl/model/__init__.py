from otemtl.config.config import Hyperparams

from .checkpoint import load_checkpoint, save_checkpoint
from .network import ForwardTrace, backward, dep_table, encode, forward, project, tag_heads
from .params import BIAFFINE, COLLAPSED, CONCAT, ModelParams, param_shapes

__all__ = ['Hyperparams', 'load_checkpoint', 'save_checkpoint', 'ForwardTrace', 'backward',
           'dep_table', 'encode', 'forward', 'project', 'tag_heads', 'BIAFFINE', 'COLLAPSED',
           'CONCAT', 'ModelParams', 'param_shapes']
