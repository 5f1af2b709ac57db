"""
Training one model per seed and averaging the test metrics
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.types import SentenceRecord
from otemtl.data.vocab import Vocabulary, build_vocab, random_embeddings
from otemtl.decoding.predictor import predict
from otemtl.evaluation.metrics import PRF, RunSummary, gold_by_id, score, summarize_runs
from otemtl.model.params import ModelParams
from otemtl.training.trainer import TrainLog, train
from otemtl.utils.logging import get_logger, log_execution_time
from otemtl.utils.parallel import parallel_map

logger = get_logger(__name__)


@dataclass
class RunResult:
    seed: int
    test: PRF
    log: TrainLog
    params: Optional[ModelParams] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {"seed": self.seed, **self.test.to_dict(), "best_epoch": self.log.best_epoch,
                "val_f1": self.log.best_f1, "stop_reason": self.log.stop_reason}


@dataclass
class MultiRunResult:
    runs: List[RunResult]
    summary: RunSummary

    @property
    def f1s(self) -> List[float]:
        return [run.test.f1 for run in self.runs]

    def best_run(self) -> RunResult:
        """Run with the highest validation F1; the earliest seed wins ties"""
        return max(self.runs, key=lambda run: run.log.best_f1)

    def to_dict(self) -> dict:
        return {"runs": [run.to_dict() for run in self.runs], "mean": self.summary.to_dict()}


def evaluate(records: Sequence[SentenceRecord], params: ModelParams, hyper: Hyperparams) -> PRF:
    predictions = predict(records, params, hyper)
    return score(gold_by_id(records),
                 {record.id: triplets for record, triplets in zip(records, predictions)})


def _run_seed(job: Tuple) -> RunResult:
    train_records, val_records, test_records, hyper, seed, vocab, embeddings, show_progress = job
    params, log = train(train_records, val_records, hyper, seed, vocab=vocab,
                        embeddings=embeddings, show_progress=show_progress)
    test = evaluate(test_records, params, hyper)
    logger.info(f"Seed {seed}: test P {test.precision:.4f} R {test.recall:.4f} F1 {test.f1:.4f}")
    return RunResult(seed, test, log, params)


@log_execution_time()
def multi_run(train_records: Sequence[SentenceRecord], val_records: Sequence[SentenceRecord],
              test_records: Sequence[SentenceRecord], hyper: Hyperparams, seeds: Sequence[int],
              jobs: int = 1, vocab: Optional[Vocabulary] = None,
              embeddings: Optional[np.ndarray] = None,
              show_progress: bool = False) -> MultiRunResult:
    """Train one model per seed, evaluate each on the test split and average.

    Runs are independent; with ``jobs > 1`` they execute in worker processes.
    Results keep the order of ``seeds``.
    Without ``embeddings`` one random matrix is drawn from the first seed and
    shared by every run.
    """
    if not seeds:
        raise ValueError("multi_run needs at least one seed")
    vocab = vocab if vocab is not None else build_vocab(train_records)
    if embeddings is None:
        embeddings = random_embeddings(vocab, hyper.d_e, np.random.default_rng(seeds[0]),
                                       hyper.init_range)
    jobs_list = [(list(train_records), list(val_records), list(test_records), hyper, seed,
                  vocab, embeddings, show_progress and jobs <= 1) for seed in seeds]
    runs = parallel_map(_run_seed, jobs_list, num_workers=jobs)
    summary = summarize_runs([run.test for run in runs])
    logger.info(f"{len(runs)} runs: mean P {summary.precision:.4f} R {summary.recall:.4f} "
                f"F1 {summary.f1:.4f} (std {summary.f1_std:.4f})")
    return MultiRunResult(runs, summary)


def load_run_f1s(data: Dict) -> Dict[int, float]:
    """Seed -> test F1 from a ``runs.json`` document"""
    return {int(run["seed"]): float(run["f1"]) for run in data["runs"]}
