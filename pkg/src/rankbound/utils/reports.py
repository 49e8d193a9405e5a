"""
Report Generator for rankbound
Renders a run's results and metrics as a standalone HTML page
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from .metrics import run_metrics

logger = logging.getLogger(__name__)

try:
    from jinja2 import Template
    from pygments import highlight
    from pygments.formatters import HtmlFormatter
    from pygments.lexers import JsonLexer
    REPORT_DEPENDENCIES_AVAILABLE = True
except ImportError as e:
    REPORT_DEPENDENCIES_AVAILABLE = False
    logger.warning(f"Report generation dependencies not available: {e}")


REPORT_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>rankbound report: {{ title }}</title>
    <style>
        body { font-family: -apple-system, "Segoe UI", sans-serif; margin: 2em; color: #222; }
        h1 { border-bottom: 2px solid #4a6fa5; padding-bottom: 0.3em; }
        table { border-collapse: collapse; margin: 1em 0; }
        th, td { border: 1px solid #ccc; padding: 0.3em 0.8em; text-align: right; }
        th { background: #eef2f8; }
        .ok { color: #2e7d32; }
        .bad { color: #c62828; font-weight: bold; }
        .meta { color: #666; font-size: 0.9em; }
        {{ highlight_css }}
    </style>
</head>
<body>
    <h1>{{ title }}</h1>
    <p class="meta">Generated {{ generation_time }} by rankbound {{ version }}</p>

    {% if rows %}
    <h2>Rows</h2>
    <table>
        <tr>{% for column in columns %}<th>{{ column }}</th>{% endfor %}</tr>
        {% for row in rows %}
        <tr>
            {% for column in columns %}<td>{{ row.get(column, "") }}</td>{% endfor %}
        </tr>
        {% endfor %}
    </table>
    {% endif %}

    {% if mismatches %}
    <h2>Mismatches</h2>
    <ul>
        {% for item in mismatches %}
        <li class="{{ 'ok' if item.known else 'bad' }}">
            {{ item.label }}: {{ item.column }} published {{ item.published }},
            computed {{ item.computed }}{% if item.known %} (known){% endif %}
        </li>
        {% endfor %}
    </ul>
    {% endif %}

    <h2>Metrics</h2>
    <table>
        {% for key, value in metrics.items() %}
        <tr><th>{{ key }}</th><td>{{ value }}</td></tr>
        {% endfor %}
    </table>

    <h2>Result</h2>
    {{ result_html }}
</body>
</html>
"""


class ReportGenerator:
    """Writes HTML reports for degree runs and table checks"""

    def __init__(self, title: str, output_dir: str = "rankbound_reports"):
        self.title = title
        self.output_dir = Path(output_dir)
        self.start_time = datetime.now()
        self.timestamp = self.start_time.strftime("%Y%m%d_%H%M%S")
        self.result: Any = None
        self.rows: List[Dict] = []

        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"ReportGenerator initialized for {title}")

    def set_result(self, result: Any):
        """JSON-compatible result shown at the bottom of the report"""
        self.result = result

    def add_rows(self, rows: List[Dict]):
        """Per-row results, e.g. one per published table entry"""
        self.rows.extend(rows)

    def _flat_rows(self) -> List[Dict]:
        flat = []
        for row in self.rows:
            entry = {}
            for key, value in row.items():
                if key == "mismatches":
                    entry[key] = len(value)
                elif key == "format" and isinstance(value, dict):
                    entry[key] = f"σ_{value['r']}({value['a']},{value['b']},{value['c']})"
                elif isinstance(value, float):
                    entry[key] = f"{value:.6f}"
                else:
                    entry[key] = value
            flat.append(entry)
        return flat

    def _mismatches(self, flat_rows: List[Dict]) -> List[Dict]:
        items = []
        for row, flat in zip(self.rows, flat_rows):
            for mismatch in row.get("mismatches", []):
                items.append(dict(mismatch, label=flat.get("format", "")))
        return items

    def generate_report(self, metrics: Optional[Dict] = None) -> Path:
        """Render and save the report; a text report is written without jinja2/pygments"""
        if not REPORT_DEPENDENCIES_AVAILABLE:
            logger.error("Cannot generate report: missing dependencies (jinja2, pygments)")
            return self._generate_fallback_report()

        result_json = json.dumps(self.result, indent=2, default=str)
        formatter = HtmlFormatter(cssclass="highlight")
        flat_rows = self._flat_rows()
        columns: List[str] = []
        for row in flat_rows:
            columns.extend(key for key in row if key not in columns)

        html_content = Template(REPORT_TEMPLATE).render(
            title=self.title,
            generation_time=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            version=__version__,
            columns=columns,
            rows=flat_rows,
            mismatches=self._mismatches(flat_rows),
            metrics=metrics if metrics is not None else run_metrics.get_summary(),
            result_html=highlight(result_json, JsonLexer(), formatter),
            highlight_css=formatter.get_style_defs(".highlight"),
        )

        html_path = self.output_dir / f"rankbound_report_{self.timestamp}.html"
        html_path.write_text(html_content, encoding="utf-8")
        (self.output_dir / "latest.html").write_text(html_content, encoding="utf-8")
        logger.info(f"📊 Report generated: {html_path}")
        return html_path

    def _generate_fallback_report(self) -> Path:
        """Generate simple text report when dependencies are missing"""
        lines = [
            f"rankbound report: {self.title}",
            "=" * 50,
            f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}",
            "",
            json.dumps(self.result, indent=2, default=str),
            "",
            "Install jinja2 and pygments for the HTML report",
        ]
        txt_path = self.output_dir / f"rankbound_report_{self.timestamp}.txt"
        txt_path.write_text("\n".join(lines), encoding="utf-8")
        return txt_path
