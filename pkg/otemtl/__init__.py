"""
OTE-MTL - opinion triplet extraction with a shared BiLSTM encoder, BIO span
taggers and a biaffine sentiment dependency parser
"""

__version__ = "0.1.0"
__author__ = "heyangxu"
__email__ = ""

from .config.config import Hyperparams, config
from .core.types import SentenceRecord, Sentiment, Span, Triplet
from .decoding.predictor import predict
from .training.trainer import train

__all__ = ["config", "Hyperparams", "SentenceRecord", "Sentiment", "Span", "Triplet",
           "predict", "train"]
