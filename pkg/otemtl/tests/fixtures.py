"""
Shared test corpora: hand-counted sentences and randomized valid records
"""
import json
import os
from typing import Iterable, List, Optional, Sequence

import numpy as np

from otemtl.core.types import SentenceRecord, Sentiment, Span, Triplet, sorted_triplets
from otemtl.data.dataset import record_to_dict

POS, NEG, NEU = Sentiment.POS, Sentiment.NEG, Sentiment.NEU


def triplet(aspect, opinion, sentiment) -> Triplet:
    return Triplet(Span(*aspect), Span(*opinion), sentiment)


# Opinion overlapped: two aspects share "Great"
BATTERY = SentenceRecord("battery", "Great battery , start up speed .".split(), [
    triplet((1, 1), (0, 0), POS),
    triplet((3, 5), (0, 0), POS),
])

# Normal triplets only
FOOD = SentenceRecord("food", "Great food but the service was dreadful !".split(), [
    triplet((1, 1), (0, 0), POS),
    triplet((4, 4), (6, 6), NEG),
])

# Aspect overlapped: "Images" carries two opinions
IMAGES = SentenceRecord("images", "Images are crisp and clean .".split(), [
    triplet((0, 0), (2, 2), POS),
    triplet((0, 0), (4, 4), POS),
])

OVERLAP_EXAMPLES = [FOOD, IMAGES, BATTERY]

TOY_CORPUS = OVERLAP_EXAMPLES + [
    SentenceRecord("atmosphere", "The atmosphere is attractive , but a little uncomfortable .".split(), [
        triplet((1, 1), (3, 3), POS),
        triplet((1, 1), (8, 8), NEG),
    ]),
    SentenceRecord("wifi", "Speedy WiFi connection".split(), [
        triplet((1, 2), (0, 0), POS),
    ]),
    SentenceRecord("price", "The price is reasonable".split(), [
        triplet((1, 1), (3, 3), NEU),
    ]),
    SentenceRecord("staff", "Rude staff and cold pizza".split(), [
        triplet((1, 1), (0, 0), NEG),
        triplet((4, 4), (3, 3), NEG),
    ]),
    SentenceRecord("menu", "We came back later".split(), []),
]


def random_record(rng: np.random.Generator, index: int = 0, max_len: int = 12,
                  max_triplets: int = 4) -> SentenceRecord:
    """A valid, conflict-free record with pairwise disjoint spans.

    Triplets are returned in decoding order so the record can be compared to
    decoder output directly.
    """
    n = int(rng.integers(2, max_len + 1))
    spans: List[Span] = []
    position = 0
    while position < n:
        position += int(rng.integers(0, 2))
        length = int(rng.integers(1, 4))
        if position + length > n:
            break
        spans.append(Span(position, position + length - 1))
        position += length

    roles = rng.integers(0, 2, size=len(spans))
    aspects = [s for s, r in zip(spans, roles) if r == 0]
    opinions = [s for s, r in zip(spans, roles) if r == 1]
    pairs = [(a, o) for a in aspects for o in opinions]
    count = min(int(rng.integers(0, max_triplets + 1)), len(pairs))
    chosen = rng.permutation(len(pairs))[:count]
    triplets = [Triplet(pairs[i][0], pairs[i][1], Sentiment(int(rng.integers(0, 3))))
                for i in chosen]
    tokens = [f"w{int(t)}" for t in rng.integers(0, 50, size=n)]
    return SentenceRecord(f"random-{index}", tokens, sorted_triplets(triplets))


def random_records(count: int, seed: int = 0, **kwargs) -> List[SentenceRecord]:
    rng = np.random.default_rng(seed)
    return [random_record(rng, i, **kwargs) for i in range(count)]


def write_jsonl(path: str, records: Iterable[SentenceRecord],
                extra: Optional[Sequence[dict]] = None):
    """Write records, optionally merging a per-line dict of extra fields"""
    records = list(records)
    with open(path, "w", encoding="utf-8") as f:
        for i, record in enumerate(records):
            data = record_to_dict(record)
            if extra is not None:
                data.update(extra[i])
            f.write(json.dumps(data) + "\n")
    return path


def write_lines(path: str, lines: Iterable[str]) -> str:
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line + "\n")
    return path


def slow_tests_enabled() -> bool:
    return os.environ.get("OTE_SLOW_TESTS", "").lower() in ("1", "true", "yes")
