"""
Decomposition of false positives and false negatives
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping

from otemtl.core.types import SentenceRecord, Triplet
from otemtl.data.stats import OverlapCategory, categorize_overlap
from otemtl.evaluation.metrics import check_alignment


class FalsePositiveCategory(Enum):
    FALSE_SENTIMENT = "false_sentiment"
    FALSE_ASPECT = "false_aspect"
    FALSE_OPINION = "false_opinion"
    OTHER = "other"


@dataclass
class ErrorBreakdown:
    fp_counts: Dict[FalsePositiveCategory, int] = field(
        default_factory=lambda: {c: 0 for c in FalsePositiveCategory})
    fn_counts: Dict[OverlapCategory, int] = field(
        default_factory=lambda: {c: 0 for c in OverlapCategory})

    @property
    def total_fp(self) -> int:
        return sum(self.fp_counts.values())

    @property
    def total_fn(self) -> int:
        return sum(self.fn_counts.values())

    def to_dict(self) -> dict:
        return {"false_positives": {c.value: n for c, n in self.fp_counts.items()},
                "false_negatives": {c.value: n for c, n in self.fn_counts.items()}}


def classify_false_positive(triplet: Triplet, gold: Iterable[Triplet]) -> FalsePositiveCategory:
    """Most specific diagnosis first: sentiment, then aspect, then opinion"""
    gold = list(gold)
    if any(g.aspect == triplet.aspect and g.opinion == triplet.opinion for g in gold):
        return FalsePositiveCategory.FALSE_SENTIMENT
    if any(g.opinion == triplet.opinion and g.sentiment == triplet.sentiment for g in gold):
        return FalsePositiveCategory.FALSE_ASPECT
    if any(g.aspect == triplet.aspect and g.sentiment == triplet.sentiment for g in gold):
        return FalsePositiveCategory.FALSE_OPINION
    return FalsePositiveCategory.OTHER


def error_breakdown(gold: Iterable[SentenceRecord],
                    pred: Mapping[str, Iterable[Triplet]]) -> ErrorBreakdown:
    """Classify every FP against its sentence's gold set and every FN by overlap category"""
    records = {record.id: record for record in gold}
    check_alignment(records, pred)

    fp_counts: Counter = Counter()
    fn_counts: Counter = Counter()
    for sentence_id, record in records.items():
        gold_set = set(record.triplets)
        pred_set = set(pred[sentence_id])
        for triplet in pred_set - gold_set:
            fp_counts[classify_false_positive(triplet, gold_set)] += 1
        categories = categorize_overlap(record)
        for triplet in gold_set - pred_set:
            fn_counts[categories[triplet]] += 1

    breakdown = ErrorBreakdown()
    breakdown.fp_counts.update(fp_counts)
    breakdown.fn_counts.update(fn_counts)
    return breakdown
