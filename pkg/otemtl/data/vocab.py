"""
Vocabulary construction and pretrained embedding loading
"""
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Set

import numpy as np
import tqdm

from otemtl.core.errors import EmbeddingError
from otemtl.core.types import SentenceRecord
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)

PAD = "<pad>"
UNK = "<unk>"
PAD_INDEX = 0
UNK_INDEX = 1


class Vocabulary:
    """Token to index map; <pad> is 0 and <unk> is 1. Read-only once built."""

    def __init__(self, tokens: Iterable[str] = ()):
        self._itos: List[str] = [PAD, UNK]
        self._stoi: Dict[str, int] = {PAD: PAD_INDEX, UNK: UNK_INDEX}
        for token in tokens:
            if token not in self._stoi:
                self._stoi[token] = len(self._itos)
                self._itos.append(token)

    def __len__(self) -> int:
        return len(self._itos)

    def __contains__(self, token: str) -> bool:
        return token in self._stoi

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._itos == other._itos

    def __repr__(self):
        return f"{self.__class__.__name__}({len(self)})"

    def index(self, token: str) -> int:
        return self._stoi.get(token, UNK_INDEX)

    def token(self, index: int) -> str:
        return self._itos[index]

    def encode(self, tokens: Sequence[str]) -> np.ndarray:
        return np.array([self.index(t) for t in tokens], dtype=np.int64)

    def to_list(self) -> List[str]:
        return list(self._itos)

    @classmethod
    def from_list(cls, itos: Sequence[str]) -> "Vocabulary":
        if list(itos[:2]) != [PAD, UNK]:
            raise ValueError("vocabulary list must start with <pad>, <unk>")
        return cls(itos[2:])


def build_vocab(records: Iterable[SentenceRecord], min_count: int = 1) -> Vocabulary:
    """Index every training token seen at least ``min_count`` times"""
    counts = Counter(token for record in records for token in record.tokens)
    kept = sorted((t for t, c in counts.items() if c >= min_count),
                  key=lambda t: (-counts[t], t))
    vocab = Vocabulary(kept)
    logger.info(f"Built vocabulary of {len(vocab)} entries "
                f"({len(counts) - len(kept)} tokens below min_count={min_count})")
    return vocab


def _parse_line(line: str):
    # any run of spaces or tabs separates fields
    token, *values = line.split()
    return token, values


def load_embeddings(path: str, vocab: Vocabulary, dim: int,
                    rng: Optional[np.random.Generator] = None,
                    init_range: float = 0.1, verbose: bool = False) -> np.ndarray:
    """Build a |V| x dim embedding matrix from a whitespace separated text file.

    Rows of tokens found in the file are copied; other rows (and <unk>) are
    drawn uniformly from [-init_range, init_range]; the <pad> row is zero.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    matrix = rng.uniform(-init_range, init_range, size=(len(vocab), dim))
    matrix[PAD_INDEX] = 0.0
    found: Set[int] = set()

    logger.info(f"Loading vectors from {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(
                    tqdm.tqdm(f, disable=not verbose, ncols=100, desc="Loading vectors"),
                    start=1):
                if not line.strip():
                    continue
                token, values = _parse_line(line)
                # word2vec style header: "<count> <dim>"
                if line_number == 1 and len(values) == 1 and token.isdigit() and values[0].isdigit():
                    continue
                if len(values) != dim:
                    raise EmbeddingError(
                        f"{path}:{line_number}: token {token!r} has {len(values)} values, "
                        f"expected {dim}")
                index = vocab.index(token)
                # <unk> keeps its uniform draw even when the file has a row for it
                if index in (PAD_INDEX, UNK_INDEX):
                    continue
                try:
                    matrix[index] = np.array(values, dtype=np.float64)
                except ValueError:
                    raise EmbeddingError(f"{path}:{line_number}: token {token!r} has non-numeric values")
                found.add(index)
    except OSError as e:
        raise EmbeddingError(f"cannot read embeddings {path}: {e.strerror or e}")

    coverage = embedding_coverage(vocab, found)
    logger.info(f"Pretrained vectors cover {len(found)}/{len(vocab) - 2} vocabulary tokens "
                f"({coverage:.1%})")
    return matrix


def embedding_coverage(vocab: Vocabulary, found: Set[int]) -> float:
    """Fraction of non-special vocabulary entries with a pretrained vector"""
    regular = len(vocab) - 2
    if regular <= 0:
        return 0.0
    return len({i for i in found if i > UNK_INDEX}) / regular


def random_embeddings(vocab: Vocabulary, dim: int, rng: np.random.Generator,
                      init_range: float = 0.1) -> np.ndarray:
    """Embedding matrix without pretrained vectors"""
    matrix = rng.uniform(-init_range, init_range, size=(len(vocab), dim))
    matrix[PAD_INDEX] = 0.0
    return matrix
