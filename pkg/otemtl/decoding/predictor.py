"""
Running a trained model over records
"""
from typing import List, Sequence, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.types import SentenceRecord, Triplet
from otemtl.data.encoding import split_collapsed
from otemtl.decoding.decoder import decode_sentence
from otemtl.model.network import forward
from otemtl.model.params import COLLAPSED, ModelParams
from otemtl.utils.logging import get_logger, log_execution_time

logger = get_logger(__name__)


def predict_tags(trace) -> Tuple[np.ndarray, np.ndarray]:
    """Per-token argmax tags; the collapsed 5-way argmax is split back into two sequences"""
    if trace.variant == COLLAPSED:
        return split_collapsed(np.argmax(trace.p_ap, axis=-1))
    return np.argmax(trace.p_ap, axis=-1), np.argmax(trace.p_op, axis=-1)


def predict_record(record: SentenceRecord, params: ModelParams,
                   hyper: Hyperparams) -> List[Triplet]:
    token_ids = params.vocab.encode(record.tokens)
    trace = forward(token_ids, params, hyper, rng=None, training=False)
    aspect_tags, opinion_tags = predict_tags(trace)
    return decode_sentence(aspect_tags, opinion_tags, trace.dep_probs, hyper.min_pivot_prob)


@log_execution_time()
def predict(records: Sequence[SentenceRecord], params: ModelParams,
            hyper: Hyperparams) -> List[List[Triplet]]:
    """Predicted triplets for every record, in input order. No dropout is applied."""
    predictions = [predict_record(record, params, hyper) for record in records]
    logger.debug(f"Predicted {sum(len(p) for p in predictions)} triplets "
                 f"for {len(records)} sentences")
    return predictions
