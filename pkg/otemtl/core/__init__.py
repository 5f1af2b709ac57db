from .errors import (AlignmentError, CheckpointError, ConfigError, DatasetError,
                     EmbeddingError, OteMtlError, ShapeError)
from .types import (CollapsedTag, DepType, GoldEncoding, Sentiment, SentenceRecord, Span,
                    Tag, TagSeq, Triplet, ValidationResult, Violation, parse_tags,
                    render_triplet, sorted_triplets, validate_record)

__all__ = ['AlignmentError', 'CheckpointError', 'ConfigError', 'DatasetError',
           'EmbeddingError', 'OteMtlError', 'ShapeError', 'CollapsedTag', 'DepType',
           'GoldEncoding', 'Sentiment', 'SentenceRecord', 'Span', 'Tag', 'TagSeq',
           'Triplet', 'ValidationResult', 'Violation', 'parse_tags', 'render_triplet', 'sorted_triplets',
           'validate_record']
