from .batching import Batch, collate, make_batches
from .dataset import (load_dataset, load_predictions, record_from_dict, record_to_dict,
                      write_dataset)
from .encoding import encode_collapsed, encode_gold, split_collapsed
from .stats import (CorpusStats, OverlapCategory, categorize_overlap, corpus_stats,
                    split_stats)
from .vocab import (PAD_INDEX, UNK_INDEX, Vocabulary, build_vocab, load_embeddings,
                    random_embeddings)

__all__ = ['Batch', 'collate', 'make_batches', 'load_dataset', 'load_predictions',
           'record_from_dict', 'record_to_dict', 'write_dataset', 'encode_collapsed',
           'encode_gold', 'split_collapsed', 'CorpusStats', 'OverlapCategory',
           'categorize_overlap', 'corpus_stats', 'split_stats', 'PAD_INDEX', 'UNK_INDEX',
           'Vocabulary', 'build_vocab', 'load_embeddings', 'random_embeddings']
