"""
HTML evaluation report
"""
import datetime
import os
from typing import Dict, Optional

import pandas as pd
import plotly.express as px
from jinja2 import Environment, PackageLoader, select_autoescape

from otemtl.evaluation.errors import ErrorBreakdown
from otemtl.evaluation.metrics import PRF
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)


class HTMLReporter:
    """Render metrics, error components and run tables into one HTML page"""

    def __init__(self, title: str = "OTE-MTL Evaluation Report"):
        self.title = title
        self.env = Environment(loader=PackageLoader("otemtl", "templates"),
                               autoescape=select_autoescape(["html"]))

    def generate_report(self, metrics: PRF, output_file: str,
                        breakdown: Optional[ErrorBreakdown] = None,
                        runs: Optional[dict] = None) -> str:
        """Write the report and return its path.

        Args:
            metrics: corpus-level exact-match metrics
            output_file: target path, parent directories are created
            breakdown: optional FP/FN decomposition, drawn as pie charts
            runs: optional ``runs.json`` document of a multi-seed training
        """
        template = self.env.get_template("report.html")
        html = template.render(
            title=self.title,
            metrics=metrics,
            breakdown=breakdown,
            charts=self._generate_charts(breakdown) if breakdown else {},
            runs=runs,
            generated_at=datetime.datetime.now().isoformat(),
        )

        os.makedirs(os.path.dirname(os.path.abspath(output_file)), exist_ok=True)
        with open(output_file, "w", encoding="utf-8") as f:
            f.write(html)

        logger.info(f"Generated HTML report: {output_file}")
        return output_file

    def _generate_charts(self, breakdown: ErrorBreakdown) -> Dict[str, str]:
        charts = {}
        for key, title, counts in (
                ("false_positives", "Components of false positives", breakdown.fp_counts),
                ("false_negatives", "Components of false negatives", breakdown.fn_counts)):
            frame = pd.DataFrame([{"category": c.value, "count": n} for c, n in counts.items()])
            if frame["count"].sum() == 0:
                continue
            fig = px.pie(frame, values="count", names="category", title=title)
            # Embedded as a div; plotly.js comes from the CDN
            charts[key] = fig.to_html(full_html=False, include_plotlyjs="cdn")
        return charts
