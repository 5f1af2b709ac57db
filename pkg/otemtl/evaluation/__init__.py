from .errors import ErrorBreakdown, FalsePositiveCategory, classify_false_positive, error_breakdown
from .metrics import PRF, RunSummary, check_alignment, gold_by_id, score, summarize_runs
from .significance import (SIGNIFICANCE_LEVEL, RunComparison, TTestResult, compare_runs,
                           paired_t_statistic, paired_t_test)

__all__ = ['ErrorBreakdown', 'FalsePositiveCategory', 'classify_false_positive',
           'error_breakdown', 'PRF', 'RunSummary', 'check_alignment', 'gold_by_id', 'score',
           'summarize_runs', 'SIGNIFICANCE_LEVEL', 'RunComparison', 'TTestResult',
           'compare_runs', 'paired_t_statistic', 'paired_t_test']
