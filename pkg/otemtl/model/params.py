"""
Trainable parameters of the network
"""
import copy
from collections import OrderedDict
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.errors import ShapeError
from otemtl.data.vocab import PAD_INDEX, Vocabulary
from otemtl.numerics.lstm import LSTMWeights

BIAFFINE = "biaffine"
CONCAT = "concat"
COLLAPSED = "collapsed"

NUM_TAGS = 3
NUM_COLLAPSED_TAGS = 5
NUM_DEP_TYPES = 4

EMBEDDING = "embedding"


def param_shapes(vocab_size: int, hyper: Hyperparams) -> "OrderedDict[str, Tuple[int, ...]]":
    """Names and shapes of every trainable tensor for the configured variant"""
    d_e, d_h, d_r = hyper.d_e, hyper.d_h, hyper.d_r
    shapes: "OrderedDict[str, Tuple[int, ...]]" = OrderedDict()
    shapes[EMBEDDING] = (vocab_size, d_e)
    for direction in ("lstm_fw", "lstm_bw"):
        shapes[f"{direction}.W_x"] = (4 * d_h, d_e)
        shapes[f"{direction}.W_h"] = (4 * d_h, d_h)
        shapes[f"{direction}.b"] = (4 * d_h,)

    if hyper.variant == COLLAPSED:
        projections = ("proj_tag", "proj_ap_dep", "proj_op_dep")
    else:
        projections = ("proj_ap", "proj_op", "proj_ap_dep", "proj_op_dep")
    for name in projections:
        shapes[f"{name}.W"] = (d_r, 2 * d_h)
        shapes[f"{name}.b"] = (d_r,)

    if hyper.variant == COLLAPSED:
        shapes["tag_joint.W"] = (NUM_COLLAPSED_TAGS, d_r)
        shapes["tag_joint.b"] = (NUM_COLLAPSED_TAGS,)
    else:
        for name in ("tag_ap", "tag_op"):
            shapes[f"{name}.W"] = (NUM_TAGS, d_r)
            shapes[f"{name}.b"] = (NUM_TAGS,)

    if hyper.variant == CONCAT:
        shapes["concat.W"] = (NUM_DEP_TYPES, 2 * d_r)
        shapes["concat.b"] = (NUM_DEP_TYPES,)
    else:
        shapes["biaffine.W"] = (NUM_DEP_TYPES, d_r, d_r)
        shapes["biaffine.b"] = (NUM_DEP_TYPES, d_r)
    return shapes


class ModelParams:
    """All trainable tensors plus the vocabulary they index"""

    def __init__(self, tensors: Dict[str, np.ndarray], vocab: Vocabulary, variant: str):
        self.tensors = tensors
        self.vocab = vocab
        self.variant = variant

    @classmethod
    def initialize(cls, vocab: Vocabulary, hyper: Hyperparams, rng: np.random.Generator,
                   embeddings: Optional[np.ndarray] = None) -> "ModelParams":
        """Uniform initialisation in [-init_range, init_range]; pretrained rows kept as given"""
        tensors: Dict[str, np.ndarray] = OrderedDict()
        for name, shape in param_shapes(len(vocab), hyper).items():
            if name == EMBEDDING and embeddings is not None:
                if embeddings.shape != shape:
                    raise ShapeError(f"embedding matrix {embeddings.shape} does not match {shape}")
                tensors[name] = np.array(embeddings, dtype=np.float64)
            else:
                tensors[name] = rng.uniform(-hyper.init_range, hyper.init_range, size=shape)
        tensors[EMBEDDING][PAD_INDEX] = 0.0
        return cls(tensors, vocab, hyper.variant)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.tensors[name]

    def __contains__(self, name: str) -> bool:
        return name in self.tensors

    def __iter__(self) -> Iterator[str]:
        return iter(self.tensors)

    def items(self):
        return self.tensors.items()

    def names(self) -> List[str]:
        return list(self.tensors)

    def lstm(self, direction: str) -> LSTMWeights:
        return LSTMWeights(self.tensors[f"{direction}.W_x"], self.tensors[f"{direction}.W_h"],
                           self.tensors[f"{direction}.b"])

    def regularized_names(self) -> List[str]:
        """Every parameter except the embedding matrix"""
        return [name for name in self.tensors if name != EMBEDDING]

    def dependency_head_names(self) -> List[str]:
        return [name for name in self.tensors if name.startswith(("biaffine.", "concat."))]

    def copy(self) -> "ModelParams":
        return ModelParams({name: value.copy() for name, value in self.tensors.items()},
                           copy.deepcopy(self.vocab), self.variant)

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(value)) for value in self.tensors.values())

    def check_shapes(self, hyper: Hyperparams):
        expected = param_shapes(len(self.vocab), hyper)
        if list(expected) != list(self.tensors):
            raise ShapeError(f"parameter names {list(self.tensors)} do not match "
                             f"variant {hyper.variant!r}")
        for name, shape in expected.items():
            if self.tensors[name].shape != shape:
                raise ShapeError(f"parameter {name!r} has shape {self.tensors[name].shape}, "
                                 f"expected {shape}")
