"""
Exact-match precision, recall and micro F1 over triplet sets
"""
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Set

from otemtl.core.errors import AlignmentError
from otemtl.core.types import SentenceRecord, Triplet


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "PRF":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return cls(precision, recall, f1, tp, fp, fn)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


TripletSets = Mapping[str, Iterable[Triplet]]


def gold_by_id(records: Iterable[SentenceRecord]) -> Dict[str, List[Triplet]]:
    return {record.id: list(record.triplets) for record in records}


def check_alignment(gold: TripletSets, pred: TripletSets):
    missing = sorted(set(gold) - set(pred))
    extra = sorted(set(pred) - set(gold))
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"{len(missing)} gold ids without prediction (first: {missing[0]!r})")
        if extra:
            parts.append(f"{len(extra)} predicted ids not in gold (first: {extra[0]!r})")
        raise AlignmentError("sentence id mismatch: " + "; ".join(parts))


def score(gold: TripletSets, pred: TripletSets) -> PRF:
    """Micro-aggregated exact-match PRF.

    A predicted triplet is a true positive iff both spans and the sentiment
    equal a gold triplet of the same sentence. Both sides are treated as sets.

    Raises:
        AlignmentError: the two sides do not cover the same sentence ids
    """
    check_alignment(gold, pred)
    tp = fp = fn = 0
    for sentence_id, gold_triplets in gold.items():
        gold_set: Set[Triplet] = set(gold_triplets)
        pred_set: Set[Triplet] = set(pred[sentence_id])
        matched = len(gold_set & pred_set)
        tp += matched
        fp += len(pred_set) - matched
        fn += len(gold_set) - matched
    return PRF.from_counts(tp, fp, fn)


@dataclass(frozen=True)
class RunSummary:
    """Mean and sample standard deviation of per-run metrics"""
    runs: int
    precision: float
    recall: float
    f1: float
    precision_std: float
    recall_std: float
    f1_std: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _mean_std(values: Sequence[float]):
    mean = math.fsum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    variance = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(variance)


def summarize_runs(per_run: Sequence[PRF]) -> RunSummary:
    """Arithmetic mean of per-run metrics (not the F1 of pooled counts)"""
    if not per_run:
        raise ValueError("summarize_runs needs at least one run")
    p, p_std = _mean_std([r.precision for r in per_run])
    r, r_std = _mean_std([r.recall for r in per_run])
    f, f_std = _mean_std([r.f1 for r in per_run])
    return RunSummary(len(per_run), p, r, f, p_std, r_std, f_std)
