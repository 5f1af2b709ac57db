"""
Corpus statistics and overlap categories of triplets
"""
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple

from otemtl.core.types import SentenceRecord, Triplet


class OverlapCategory(Enum):
    NORMAL = "normal"
    ASPECT_OVERLAPPED = "aspect_overlapped"
    OPINION_OVERLAPPED = "opinion_overlapped"


# Category of a triplet that shares both its aspect and its opinion span
BOTH_SHARED_CATEGORY = OverlapCategory.ASPECT_OVERLAPPED


@dataclass(frozen=True)
class CorpusStats:
    sentences: int = 0
    triplets: int = 0
    sentences_with_overlap: int = 0
    triplets_with_overlap: int = 0

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(
            self.sentences + other.sentences,
            self.triplets + other.triplets,
            self.sentences_with_overlap + other.sentences_with_overlap,
            self.triplets_with_overlap + other.triplets_with_overlap,
        )

    def as_row(self) -> Tuple[int, int, int, int]:
        return (self.sentences, self.triplets, self.sentences_with_overlap,
                self.triplets_with_overlap)


STATS_COLUMNS = ("# sentence", "# triplet", "# sentence w/ overlap", "# triplet w/ overlap")


def categorize_overlap(record: SentenceRecord) -> Dict[Triplet, OverlapCategory]:
    """Label each triplet by the span it shares with another triplet of the sentence"""
    triplets = list(dict.fromkeys(record.triplets))
    aspect_counts = Counter(t.aspect for t in triplets)
    opinion_counts = Counter(t.opinion for t in triplets)

    categories: Dict[Triplet, OverlapCategory] = {}
    for triplet in triplets:
        shares_aspect = aspect_counts[triplet.aspect] > 1
        shares_opinion = opinion_counts[triplet.opinion] > 1
        if shares_aspect and shares_opinion:
            categories[triplet] = BOTH_SHARED_CATEGORY
        elif shares_aspect:
            categories[triplet] = OverlapCategory.ASPECT_OVERLAPPED
        elif shares_opinion:
            categories[triplet] = OverlapCategory.OPINION_OVERLAPPED
        else:
            categories[triplet] = OverlapCategory.NORMAL
    return categories


def corpus_stats(records: Iterable[SentenceRecord]) -> CorpusStats:
    """Count sentences, triplets and their overlapped subsets"""
    total = CorpusStats()
    for record in records:
        categories = categorize_overlap(record)
        overlapped = sum(1 for c in categories.values() if c is not OverlapCategory.NORMAL)
        total = total + CorpusStats(1, len(categories), int(overlapped > 0), overlapped)
    return total


def split_stats(splits: Iterable[Tuple[str, Iterable[SentenceRecord]]]) -> List[Tuple[str, CorpusStats]]:
    """Statistics for several named splits, in the given order"""
    return [(name, corpus_stats(records)) for name, records in splits]
