"""
Gold label encoding: BIO tag sequences and the sentiment dependency table
"""
from typing import Tuple

import numpy as np

from otemtl.core.types import (CollapsedTag, DepType, GoldEncoding, SentenceRecord, Span,
                               Tag)
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)


def _mark_span(tags: np.ndarray, span: Span):
    tags[span.start] = Tag.B
    for i in range(span.start + 1, span.end + 1):
        # A B from another span wins over an I
        if tags[i] != Tag.B:
            tags[i] = Tag.I


def encode_gold(record: SentenceRecord) -> GoldEncoding:
    """Encode the gold triplets of a valid record.

    Tags are the BIO union of all aspect (resp. opinion) spans. The table cell
    (aspect last word, opinion last word) carries the triplet sentiment; when
    two triplets claim one cell with different sentiments, the later triplet in
    file order wins and a warning is logged.
    """
    n = len(record.tokens)
    aspect_tags = np.full(n, int(Tag.O), dtype=np.int64)
    opinion_tags = np.full(n, int(Tag.O), dtype=np.int64)
    dep_table = np.full((n, n), int(DepType.NO_DEP), dtype=np.int64)

    for triplet in record.triplets:
        _mark_span(aspect_tags, triplet.aspect)
        _mark_span(opinion_tags, triplet.opinion)
        cell = (triplet.aspect.end, triplet.opinion.end)
        label = int(DepType.from_sentiment(triplet.sentiment))
        previous = dep_table[cell]
        if previous != DepType.NO_DEP and previous != label:
            logger.warning(
                f"record {record.id!r}: conflicting sentiments at cell {cell}: "
                f"{DepType(previous).label} replaced by {DepType(label).label}")
        dep_table[cell] = label

    return GoldEncoding(aspect_tags, opinion_tags, dep_table)


def encode_collapsed(gold: GoldEncoding) -> np.ndarray:
    """Merge aspect and opinion tags into the 5-way collapsed tag set.

    A token tagged by both sequences keeps its aspect tag.
    """
    collapsed = np.full(len(gold), int(CollapsedTag.O), dtype=np.int64)
    for i, (a, o) in enumerate(zip(gold.aspect_tags, gold.opinion_tags)):
        if a == Tag.B:
            collapsed[i] = CollapsedTag.B_AP
        elif a == Tag.I:
            collapsed[i] = CollapsedTag.I_AP
        elif o == Tag.B:
            collapsed[i] = CollapsedTag.B_OP
        elif o == Tag.I:
            collapsed[i] = CollapsedTag.I_OP
    return collapsed


_SPLIT_ASPECT = np.array([Tag.B, Tag.I, Tag.O, Tag.O, Tag.O], dtype=np.int64)
_SPLIT_OPINION = np.array([Tag.O, Tag.O, Tag.B, Tag.I, Tag.O], dtype=np.int64)


def split_collapsed(collapsed: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Project collapsed tag codes back onto separate aspect and opinion BIO codes"""
    collapsed = np.asarray(collapsed, dtype=np.int64)
    return _SPLIT_ASPECT[collapsed], _SPLIT_OPINION[collapsed]
