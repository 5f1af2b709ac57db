"""
Plain-text tables for the console and TSV files
"""
from typing import Iterable, Optional, Tuple

import pandas as pd

from otemtl.data.stats import STATS_COLUMNS, CorpusStats
from otemtl.evaluation.errors import ErrorBreakdown
from otemtl.evaluation.metrics import PRF


def metrics_frame(metrics: PRF) -> pd.DataFrame:
    return pd.DataFrame([metrics.to_dict()],
                        columns=["precision", "recall", "f1", "tp", "fp", "fn"])


def format_metrics(metrics: PRF, breakdown: Optional[ErrorBreakdown] = None) -> str:
    """Aligned metrics table, followed by the error components when given"""
    text = metrics_frame(metrics).to_string(index=False, float_format=lambda x: f"{x:.4f}")
    if breakdown is not None:
        fp = pd.Series({c.value: n for c, n in breakdown.fp_counts.items()}, name="count")
        fn = pd.Series({c.value: n for c, n in breakdown.fn_counts.items()}, name="count")
        text += ("\n\nfalse positives\n" + fp.to_string()
                 + "\n\nfalse negatives\n" + fn.to_string())
    return text


def stats_frame(splits: Iterable[Tuple[str, CorpusStats]]) -> pd.DataFrame:
    rows = [(name, *stats.as_row()) for name, stats in splits]
    return pd.DataFrame(rows, columns=["split", *STATS_COLUMNS])


def format_stats(splits: Iterable[Tuple[str, CorpusStats]]) -> str:
    return stats_frame(splits).to_string(index=False)


def stats_tsv(splits: Iterable[Tuple[str, CorpusStats]]) -> str:
    return stats_frame(splits).to_csv(sep="\t", index=False)


def runs_frame(runs: dict) -> pd.DataFrame:
    """Per-run rows of a ``runs.json`` document plus a mean row"""
    frame = pd.DataFrame(runs["runs"], columns=["seed", "precision", "recall", "f1",
                                                "best_epoch", "stop_reason"])
    mean = runs["mean"]
    frame.loc[len(frame)] = ["mean", mean["precision"], mean["recall"], mean["f1"], "", ""]
    return frame


def format_runs(runs: dict) -> str:
    text = runs_frame(runs).to_string(index=False, float_format=lambda x: f"{x:.4f}")
    return text + f"\n\nF1 std over {runs['mean']['runs']} runs: {runs['mean']['f1_std']:.4f}"
