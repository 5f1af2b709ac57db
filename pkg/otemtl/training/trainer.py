"""
Epoch loop with validation-based early stopping
"""
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from otemtl.config.config import Hyperparams
from otemtl.core.errors import DatasetError
from otemtl.core.types import SentenceRecord
from otemtl.data.batching import make_batches
from otemtl.data.encoding import encode_gold
from otemtl.data.vocab import Vocabulary, build_vocab
from otemtl.decoding.predictor import predict
from otemtl.evaluation.metrics import gold_by_id, score
from otemtl.model.params import ModelParams
from otemtl.training.early_stopping import EarlyStopping
from otemtl.training.losses import LossReport, batch_loss_and_grads, corpus_loss
from otemtl.training.optimizer import OptimizerState, adam_step
from otemtl.utils.logging import get_logger, log_execution_time
from otemtl.utils.memory import memory_monitor

logger = get_logger(__name__)

STOP_PATIENCE = "patience"
STOP_MAX_EPOCHS = "max_epochs"
STOP_NON_FINITE = "non_finite"


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: LossReport
    val_f1: float
    val_loss: Optional[float] = None


@dataclass
class TrainLog:
    """Per-epoch history of one training run"""
    seed: int
    epochs: List[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    stop_reason: str = ""

    @property
    def best_f1(self) -> float:
        for record in self.epochs:
            if record.epoch == self.best_epoch:
                return record.val_f1
        return 0.0

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "best_epoch": self.best_epoch,
            "best_f1": self.best_f1,
            "stop_reason": self.stop_reason,
            "epochs": [asdict(record) for record in self.epochs],
        }


def _mean_report(reports: Sequence[LossReport]) -> LossReport:
    return LossReport(*(float(np.mean([getattr(r, name) for r in reports]))
                        for name in ("l_tag", "l_dep", "l_reg", "l_total")))


def validation_f1(records: Sequence[SentenceRecord], params: ModelParams,
                  hyper: Hyperparams) -> float:
    predictions = predict(records, params, hyper)
    pred = {record.id: triplets for record, triplets in zip(records, predictions)}
    return score(gold_by_id(records), pred).f1


@log_execution_time()
def train(train_records: Sequence[SentenceRecord], val_records: Sequence[SentenceRecord],
          hyper: Hyperparams, seed: int, vocab: Optional[Vocabulary] = None,
          embeddings: Optional[np.ndarray] = None,
          show_progress: bool = False) -> Tuple[ModelParams, TrainLog]:
    """Train one model and return its best validation checkpoint.

    Args:
        train_records: training split, must not be empty
        val_records: validation split used for checkpoint selection
        hyper: hyperparameters
        seed: seed for initialisation, shuffling and dropout
        vocab: vocabulary; built from the training split when omitted
        embeddings: initial embedding matrix aligned with ``vocab``
        show_progress: show a tqdm bar over epochs

    Returns:
        (best params, TrainLog)
    """
    if not train_records:
        raise DatasetError("training split is empty")
    hyper.validate()
    if vocab is None:
        vocab = build_vocab(train_records)
    if not val_records:
        logger.warning("Validation split is empty; validation F1 stays 0")

    rng = np.random.default_rng(seed)
    params = ModelParams.initialize(vocab, hyper, rng, embeddings)
    state = OptimizerState.for_params(params)
    selecting_f1 = hyper.selection_metric == "f1"
    stopper = EarlyStopping(hyper.patience, mode="max" if selecting_f1 else "min")
    val_sentences = None
    if not selecting_f1:
        val_sentences = [(vocab.encode(r.tokens), encode_gold(r)) for r in val_records]

    log = TrainLog(seed=seed, stop_reason=STOP_MAX_EPOCHS)
    best_params = params.copy()
    epochs = tqdm(range(1, hyper.max_epochs + 1), desc=f"seed {seed}", unit="epoch",
                  disable=not show_progress)
    for epoch in epochs:
        with memory_monitor.monitor_operation(f"epoch {epoch}"):
            shuffle_seed = int(rng.integers(2 ** 31 - 1))
            reports = []
            for batch in make_batches(train_records, vocab, hyper.batch_size, shuffle_seed):
                report, grads = batch_loss_and_grads(batch, params, hyper, rng, training=True)
                adam_step(params, grads, state, hyper.learning_rate)
                reports.append(report)
            train_loss = _mean_report(reports)
            if not params.all_finite():
                logger.error(f"Non-finite parameters after epoch {epoch}; stopping")
                log.stop_reason = STOP_NON_FINITE
                break

            val_f1 = validation_f1(val_records, params, hyper)
            val_loss = None
            if val_sentences is not None:
                val_loss = corpus_loss(val_sentences, params, hyper).l_total

        log.epochs.append(EpochRecord(epoch, train_loss, val_f1, val_loss))
        improved = stopper(val_f1 if selecting_f1 else val_loss, epoch)
        if improved:
            best_params = params.copy()
            log.best_epoch = epoch
        logger.info(f"Epoch {epoch}: loss {train_loss.l_total:.4f} "
                    f"(tag {train_loss.l_tag:.4f}, dep {train_loss.l_dep:.4f}), "
                    f"val F1 {val_f1:.4f}{' *' if improved else ''}",
                    extra={"seed": seed, "epoch": epoch, "loss": train_loss.l_total, "val_f1": val_f1})
        epochs.set_postfix(loss=f"{train_loss.l_total:.4f}", val_f1=f"{val_f1:.4f}")
        if stopper.early_stop:
            log.stop_reason = STOP_PATIENCE
            break

    logger.info(f"Seed {seed}: best epoch {log.best_epoch} with val F1 {log.best_f1:.4f} "
                f"(stopped by {log.stop_reason})")
    return best_params, log
