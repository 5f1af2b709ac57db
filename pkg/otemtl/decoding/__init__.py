from otemtl.core.types import render_triplet

from .decoder import DepPivot, decode_gold, decode_one, decode_sentence, extract_pivots
from .predictor import predict, predict_record, predict_tags

__all__ = ['render_triplet', 'DepPivot', 'decode_gold', 'decode_one', 'decode_sentence',
           'extract_pivots', 'predict', 'predict_record', 'predict_tags']
