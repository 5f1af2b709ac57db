from .html import HTMLReporter
from .text import (format_metrics, format_runs, format_stats, metrics_frame, runs_frame,
                   stats_frame, stats_tsv)

__all__ = ['HTMLReporter', 'format_metrics', 'format_runs', 'format_stats', 'metrics_frame',
           'runs_frame', 'stats_frame', 'stats_tsv']
