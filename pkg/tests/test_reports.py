"""
Tests for HTML report generation
"""

from rankbound.utils import reports
from rankbound.utils.reports import ReportGenerator


ROWS = [{
    "format": {"a": 3, "b": 5, "c": 7, "r": 8},
    "codim": 1,
    "bound": 8.366127895,
    "improving": True,
    "mismatches": [{"column": "n_vars", "published": 27, "computed": 29, "known": True}],
}]


def test_html_report(tmp_path):
    report = ReportGenerator("published table 1", str(tmp_path))
    report.add_rows(ROWS)
    report.set_result({"degree_lower_bound": 9})
    path = report.generate_report(metrics={"paths_tracked": 12})

    html = path.read_text(encoding="utf-8")
    assert path.suffix == ".html"
    assert "σ_8(3,5,7)" in html
    assert "8.366128" in html
    assert "paths_tracked" in html
    assert "degree_lower_bound" in html
    assert (tmp_path / "latest.html").read_text(encoding="utf-8") == html


def test_text_fallback(tmp_path, monkeypatch):
    monkeypatch.setattr(reports, "REPORT_DEPENDENCIES_AVAILABLE", False)
    report = ReportGenerator("degree", str(tmp_path))
    report.set_result({"degree_lower_bound": 6})
    path = report.generate_report()
    assert path.suffix == ".txt"
    assert "degree_lower_bound" in path.read_text(encoding="utf-8")
