"""
Domain types shared by all OTE-MTL modules
"""
from dataclasses import dataclass, field
from enum import IntEnum
from typing import List, Sequence, Tuple

import numpy as np


class Sentiment(IntEnum):
    """Sentiment polarity of a triplet. Numeric codes are part of the file formats."""
    NEU = 0
    NEG = 1
    POS = 2

    @classmethod
    def parse(cls, label: str) -> "Sentiment":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown sentiment label: {label!r}")


class DepType(IntEnum):
    """Cell label of the sentiment dependency table."""
    NEU = 0
    NEG = 1
    POS = 2
    NO_DEP = 3

    @property
    def label(self) -> str:
        return "NO-DEP" if self is DepType.NO_DEP else self.name

    @classmethod
    def from_sentiment(cls, sentiment: Sentiment) -> "DepType":
        return cls(int(sentiment))


class Tag(IntEnum):
    B = 0
    I = 1
    O = 2


class CollapsedTag(IntEnum):
    """Joint aspect/opinion tag set of the collapsed variant."""
    B_AP = 0
    I_AP = 1
    B_OP = 2
    I_OP = 3
    O = 4


# One tag per token; predicted sequences need not be well formed
TagSeq = Tuple[Tag, ...]


def parse_tags(text: str) -> TagSeq:
    """Parse a whitespace separated tag string such as ``"O B I O"``"""
    return tuple(Tag[t] for t in text.split())


@dataclass(frozen=True)
class Span:
    """Token span, 0-based with both ends inclusive."""
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def is_valid(self, sentence_length: int) -> bool:
        return 0 <= self.start <= self.end < sentence_length

    def overlaps(self, other: "Span") -> bool:
        return self.start <= other.end and other.start <= self.end

    def to_list(self) -> List[int]:
        return [self.start, self.end]


@dataclass(frozen=True)
class Triplet:
    aspect: Span
    opinion: Span
    sentiment: Sentiment

    def sort_key(self) -> Tuple[int, int, int, int, int]:
        return (self.aspect.start, self.opinion.start, int(self.sentiment),
                self.aspect.end, self.opinion.end)


@dataclass(frozen=True)
class SentenceRecord:
    """A tokenized sentence and its gold triplets, in file order."""
    id: str
    tokens: Tuple[str, ...]
    triplets: Tuple[Triplet, ...] = ()

    def __post_init__(self):
        # Accept lists from callers but store immutable tuples
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "triplets", tuple(self.triplets))

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True, eq=False)
class GoldEncoding:
    """Training targets of one sentence.

    ``aspect_tags`` and ``opinion_tags`` hold Tag codes, ``dep_table`` holds
    DepType codes with rows indexed by aspect last word and columns by opinion
    last word.
    """
    aspect_tags: np.ndarray
    opinion_tags: np.ndarray
    dep_table: np.ndarray

    def __len__(self) -> int:
        return int(self.aspect_tags.shape[0])


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    triplet_index: int = -1


SPAN_OUT_OF_RANGE = "span out of range"
SPAN_OVERLAP = "aspect/opinion overlap within triplet"
DUPLICATE_TRIPLET = "duplicate triplet"
EMPTY_SENTENCE = "empty sentence"


@dataclass(frozen=True)
class ValidationResult:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(v.message for v in self.violations)


def validate_record(record: SentenceRecord) -> ValidationResult:
    """Check a record against the span and triplet-set invariants.

    Violations are returned, never raised.
    """
    violations: List[Violation] = []
    n = len(record.tokens)
    if n == 0:
        violations.append(Violation(EMPTY_SENTENCE, f"record {record.id!r} has no tokens"))

    seen = set()
    for index, triplet in enumerate(record.triplets):
        for role, span in (("aspect", triplet.aspect), ("opinion", triplet.opinion)):
            if not span.is_valid(n):
                violations.append(Violation(
                    SPAN_OUT_OF_RANGE,
                    f"triplet {index}: {role} span ({span.start},{span.end}) "
                    f"out of range for {n} tokens",
                    index))
        if triplet.aspect.overlaps(triplet.opinion):
            violations.append(Violation(
                SPAN_OVERLAP,
                f"triplet {index}: aspect ({triplet.aspect.start},{triplet.aspect.end}) "
                f"overlaps opinion ({triplet.opinion.start},{triplet.opinion.end})",
                index))
        if triplet in seen:
            violations.append(Violation(DUPLICATE_TRIPLET, f"triplet {index} is a duplicate", index))
        seen.add(triplet)

    return ValidationResult(tuple(violations))


def render_triplet(tokens: Sequence[str], triplet: Triplet) -> List[str]:
    """Surface form ``[aspect text, opinion text, label]`` of a triplet"""
    aspect = " ".join(tokens[triplet.aspect.start:triplet.aspect.end + 1])
    opinion = " ".join(tokens[triplet.opinion.start:triplet.opinion.end + 1])
    return [aspect, opinion, triplet.sentiment.name]


def sorted_triplets(triplets: Sequence[Triplet]) -> List[Triplet]:
    """Deduplicate and order triplets by aspect start, opinion start, sentiment"""
    return sorted(set(triplets), key=Triplet.sort_key)
