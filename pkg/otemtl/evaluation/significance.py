"""
Paired t-test between two equally seeded sets of runs
"""
import math
from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np
from scipy.special import betainc

SIGNIFICANCE_LEVEL = 0.01


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p_value: float

    def to_dict(self) -> Dict[str, float]:
        return {"t": self.t, "df": self.df, "p_value": self.p_value}


def paired_t_statistic(f1s_a: Sequence[float], f1s_b: Sequence[float]) -> TTestResult:
    """Paired t statistic on a - b with df = n - 1 and its two-sided p-value.

    The p-value is the regularized incomplete beta I_{df/(df+t^2)}(df/2, 1/2).
    All-zero differences give t = 0 and p = 1; constant non-zero differences
    give an infinite t and p = 0.
    """
    a = np.asarray(f1s_a, dtype=np.float64)
    b = np.asarray(f1s_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"paired samples must have equal length, got {a.shape} and {b.shape}")
    n = a.shape[0]
    if n < 2:
        raise ValueError(f"paired t-test needs at least 2 pairs, got {n}")

    diffs = a - b
    df = n - 1
    if not np.any(diffs):
        return TTestResult(0.0, df, 1.0)
    sd = float(np.std(diffs, ddof=1))
    mean = float(np.mean(diffs))
    if sd == 0.0:
        return TTestResult(math.copysign(math.inf, mean), df, 0.0)

    t = mean / (sd / math.sqrt(n))
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return TTestResult(t, df, min(max(p, 0.0), 1.0))


def paired_t_test(f1s_a: Sequence[float], f1s_b: Sequence[float]) -> float:
    """Two-sided p-value of the paired t-test"""
    return paired_t_statistic(f1s_a, f1s_b).p_value


@dataclass(frozen=True)
class RunComparison:
    mean_a: float
    mean_b: float
    test: TTestResult
    level: float = SIGNIFICANCE_LEVEL

    @property
    def significant(self) -> bool:
        return self.test.p_value < self.level

    def to_dict(self) -> dict:
        return {"mean_f1_a": self.mean_a, "mean_f1_b": self.mean_b, **self.test.to_dict(),
                "level": self.level, "significant": self.significant}


def compare_runs(f1s_a: Sequence[float], f1s_b: Sequence[float],
                 level: float = SIGNIFICANCE_LEVEL) -> RunComparison:
    """Paired comparison of per-run F1 vectors from the same seed list"""
    test = paired_t_statistic(f1s_a, f1s_b)
    return RunComparison(float(np.mean(f1s_a)), float(np.mean(f1s_b)), test, level)
