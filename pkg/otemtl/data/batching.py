"""
Padding records into batches
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from otemtl.core.types import GoldEncoding, SentenceRecord
from otemtl.data.encoding import encode_gold
from otemtl.data.vocab import PAD_INDEX, Vocabulary

# Label used at padded positions; never read because masks exclude them
PAD_LABEL = -1


@dataclass(frozen=True, eq=False)
class Batch:
    records: Tuple[SentenceRecord, ...]
    token_ids: np.ndarray      # (batch, max_len), <pad> filled
    lengths: np.ndarray        # (batch,)
    mask: np.ndarray           # (batch, max_len) True at real tokens
    aspect_tags: np.ndarray    # (batch, max_len)
    opinion_tags: np.ndarray   # (batch, max_len)
    dep_table: np.ndarray      # (batch, max_len, max_len)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def pair_mask(self) -> np.ndarray:
        """(batch, max_len, max_len) True where both words are real tokens"""
        return self.mask[:, :, None] & self.mask[:, None, :]

    def sentence(self, i: int) -> Tuple[np.ndarray, GoldEncoding]:
        """Unpadded token ids and gold encoding of the i-th sentence"""
        n = int(self.lengths[i])
        gold = GoldEncoding(self.aspect_tags[i, :n], self.opinion_tags[i, :n],
                            self.dep_table[i, :n, :n])
        return self.token_ids[i, :n], gold


def collate(records: Sequence[SentenceRecord], vocab: Vocabulary) -> Batch:
    lengths = np.array([len(r.tokens) for r in records], dtype=np.int64)
    size, max_len = len(records), int(lengths.max()) if len(records) else 0

    token_ids = np.full((size, max_len), PAD_INDEX, dtype=np.int64)
    aspect_tags = np.full((size, max_len), PAD_LABEL, dtype=np.int64)
    opinion_tags = np.full((size, max_len), PAD_LABEL, dtype=np.int64)
    dep_table = np.full((size, max_len, max_len), PAD_LABEL, dtype=np.int64)
    mask = np.zeros((size, max_len), dtype=bool)

    for i, record in enumerate(records):
        n = lengths[i]
        gold = encode_gold(record)
        token_ids[i, :n] = vocab.encode(record.tokens)
        aspect_tags[i, :n] = gold.aspect_tags
        opinion_tags[i, :n] = gold.opinion_tags
        dep_table[i, :n, :n] = gold.dep_table
        mask[i, :n] = True

    return Batch(tuple(records), token_ids, lengths, mask, aspect_tags, opinion_tags, dep_table)


def make_batches(records: Sequence[SentenceRecord], vocab: Vocabulary, batch_size: int,
                 shuffle_seed: Optional[int] = None) -> List[Batch]:
    """Split records into padded batches.

    With a seed the record order is a seeded permutation, otherwise file order.
    The final partial batch is kept.
    """
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    order = np.arange(len(records))
    if shuffle_seed is not None:
        order = np.random.default_rng(shuffle_seed).permutation(len(records))
    return [collate([records[j] for j in order[start:start + batch_size]], vocab)
            for start in range(0, len(records), batch_size)]
