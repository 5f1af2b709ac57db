"""
Triplet recovery from predicted tags and the dependency table
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from otemtl.core.types import DepType, GoldEncoding, Sentiment, Span, Tag, Triplet, sorted_triplets


@dataclass(frozen=True)
class DepPivot:
    """A predicted sentiment dependency between two last words"""
    aspect_end: int
    opinion_end: int
    sentiment: Sentiment


def extract_pivots(dep_probs: np.ndarray, min_prob: Optional[float] = None) -> List[DepPivot]:
    """One pivot per cell whose argmax is not NO-DEP, in row-major order.

    Argmax ties resolve to the lowest code (NEU < NEG < POS < NO-DEP). With
    ``min_prob`` a cell must also reach that probability on its argmax label.
    """
    labels = np.argmax(dep_probs, axis=-1)
    keep = labels != DepType.NO_DEP
    if min_prob is not None:
        keep &= np.max(dep_probs, axis=-1) >= min_prob
    rows, cols = np.nonzero(keep)
    return [DepPivot(int(i), int(j), Sentiment(int(labels[i, j]))) for i, j in zip(rows, cols)]


def _span_start(tags: Sequence[int], end: int) -> int:
    start = end
    while tags[start] == Tag.I and start > 0:
        start -= 1
    return start


def decode_one(aspect_tags: Sequence[int], opinion_tags: Sequence[int], pivot: DepPivot) -> Triplet:
    """Scan left from the pivot while the tag is I, on both tag sequences.

    The scan stops on the first B or O, or at the sentence start; that token
    is included. A pivot whose own tag is not I gives a single-token span.
    """
    j, k = pivot.aspect_end, pivot.opinion_end
    return Triplet(Span(_span_start(aspect_tags, j), j),
                   Span(_span_start(opinion_tags, k), k),
                   pivot.sentiment)


def decode_sentence(aspect_tags: Sequence[int], opinion_tags: Sequence[int],
                    dep_probs: np.ndarray, min_prob: Optional[float] = None) -> List[Triplet]:
    """Deduplicated triplets ordered by (aspect start, opinion start, sentiment)"""
    n = len(aspect_tags)
    if len(opinion_tags) != n or dep_probs.shape[:2] != (n, n):
        raise ValueError(f"inconsistent lengths: {n} aspect tags, {len(opinion_tags)} opinion "
                         f"tags, table {dep_probs.shape[:2]}")
    pivots = extract_pivots(dep_probs, min_prob)
    return sorted_triplets([decode_one(aspect_tags, opinion_tags, p) for p in pivots])


def decode_gold(gold: GoldEncoding) -> List[Triplet]:
    """Decode a GoldEncoding by treating its table codes as one-hot distributions"""
    table = np.eye(len(DepType))[np.asarray(gold.dep_table)]
    return decode_sentence(gold.aspect_tags, gold.opinion_tags, table)
