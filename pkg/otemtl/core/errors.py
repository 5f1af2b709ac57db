"""
Exception hierarchy for OTE-MTL
"""
from typing import Optional


class OteMtlError(Exception):
    """Base class for all errors raised by otemtl"""


class ConfigError(OteMtlError):
    """Malformed configuration file or out-of-range setting"""


class DatasetError(OteMtlError):
    """Unreadable dataset file or malformed record"""

    def __init__(self, message: str, path: Optional[str] = None,
                 line_number: Optional[int] = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}:{line_number}: " if line_number is not None else f"{path}: "
        super().__init__(location + message)


class EmbeddingError(OteMtlError):
    """Unreadable embeddings file or vector of the wrong dimension"""


class ShapeError(OteMtlError):
    """Tensor shapes do not agree"""


class AlignmentError(OteMtlError):
    """Gold and predicted sentence ids differ"""


class CheckpointError(OteMtlError):
    """Checkpoint file cannot be restored"""
