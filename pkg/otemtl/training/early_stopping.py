"""
Early stopping on a validation metric
"""
from typing import Optional

from otemtl.utils.logging import get_logger

logger = get_logger(__name__)


class EarlyStopping:
    """Stop training when the monitored value has not improved for ``patience`` epochs.

    Improvement is strict: an equal value does not reset the counter, so ties
    keep the earliest epoch as best.

    Args:
        patience: epochs to wait after the last improvement
        mode: "max" for F1-like metrics, "min" for losses
    """

    def __init__(self, patience: int = 5, mode: str = "max"):
        if mode not in ("max", "min"):
            raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
        self.patience = patience
        self.mode = mode

        self.counter = 0
        self.best: Optional[float] = None
        self.best_epoch: Optional[int] = None
        self.early_stop = False

    def _improves(self, value: float) -> bool:
        if self.best is None:
            return True
        return value > self.best if self.mode == "max" else value < self.best

    def __call__(self, value: float, epoch: int) -> bool:
        """Record one epoch; returns True when it is the new best"""
        if self._improves(value):
            self.best = value
            self.best_epoch = epoch
            self.counter = 0
            return True

        self.counter += 1
        logger.debug(f"Early stopping counter {self.counter} of {self.patience}")
        if self.counter >= self.patience:
            self.early_stop = True
        return False
