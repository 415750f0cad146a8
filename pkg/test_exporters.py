"""
Tests for the report model and the JSON / CSV / Markdown exporters.
"""

import csv
import json
import math
import os
import sys
import tempfile

import numpy as np
import pytest

import csv_exporter  # noqa: F401  (registers 'csv')
import json_exporter  # noqa: F401  (registers 'json')
import markdown_exporter  # noqa: F401  (registers 'markdown')
from export_base import ExportError, ExportManager
from report_manager import SCHEMA_VERSION, ExperimentReport, to_jsonable


def _sample_report() -> ExperimentReport:
    report = ExperimentReport("hilbert", {"params": {"n": [10, 20]}, "tolerances": {"pi": 1e-9}})
    report.add_row(variant="mult", N=10, value=np.float64(1.5), converged=np.bool_(True))
    report.add_row(variant="mult", N=20, value=1.75, pair=[1, 2])
    report.check_le("norm <= pi", 1.75, math.pi, 1e-9, "N=20")
    report.check_close("matches oracle", 1.0, 1.5, 0.1)
    return report.finish()


def test_to_jsonable():
    """Test conversion of numpy and complex values."""
    data = to_jsonable({1: np.arange(3), "z": 1 + 2j, "inf": float("inf"), "b": np.bool_(False)})
    assert data == {"1": [0, 1, 2], "z": [1.0, 2.0], "inf": "inf", "b": False}
    json.dumps(data)


def test_report_verdicts_and_exit_code():
    """Test verdict bookkeeping."""
    report = _sample_report()
    assert not report.passed
    assert report.exit_code() == 1
    assert [v.name for v in report.failed_verdicts()] == ["matches oracle"]
    assert report.duration_seconds >= 0.0
    empty = ExperimentReport("nehari")
    assert empty.passed and empty.exit_code() == 0


def test_report_save_and_load():
    """Test that a saved report loads back with its rows and verdicts."""
    report = _sample_report()
    with tempfile.TemporaryDirectory() as tmpdir:
        path = os.path.join(tmpdir, "nested", "report.json")
        assert report.save_to_json(path)
        loaded = ExperimentReport.load_from_json(path)
        assert ExperimentReport.load_from_json(os.path.join(tmpdir, "missing.json")) is None
    assert loaded is not None
    assert loaded.command == "hilbert"
    assert loaded.rows == report.rows
    assert [v.to_dict() for v in loaded.verdicts] == [v.to_dict() for v in report.verdicts]
    assert loaded.config["params"]["n"] == [10, 20]


def test_report_schema_mismatch():
    """Test that other schema versions are rejected."""
    data = _sample_report().to_dict()
    data["schema"] = SCHEMA_VERSION + 1
    with pytest.raises(ValueError):
        ExperimentReport.from_dict(data)


def test_export_all_formats():
    """Test exporting one report to every format under a shared stem."""
    report = _sample_report()
    with tempfile.TemporaryDirectory() as tmpdir:
        results = ExportManager.export_to_formats(report, ["csv", "markdown", "json"],
                                                  os.path.join(tmpdir, "run.json"))
        assert set(results) == {"csv", "markdown", "json"}
        assert results["csv"] == os.path.join(tmpdir, "run.csv")
        assert results["markdown"] == os.path.join(tmpdir, "run.md")

        with open(results["json"], encoding='utf-8') as f:
            document = json.load(f)
        assert document["schema"] == SCHEMA_VERSION
        assert document["passed"] is False
        assert document["exported_files"]["csv"] == results["csv"]
        assert len(document["verdicts"]) == 2

        with open(results["csv"], newline='', encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        assert [r["N"] for r in rows] == ["10", "20"]
        assert rows[0]["pair"] == ""
        assert rows[1]["pair"] == "[1, 2]"

        with open(results["markdown"], encoding='utf-8') as f:
            content = f.read()
        assert content.startswith("# hilbert: FAIL")
        assert "| matches oracle | NO |" in content
        assert "## Results" in content


def test_export_unknown_format():
    """Test that an unknown format raises after the known ones are written."""
    report = _sample_report()
    with tempfile.TemporaryDirectory() as tmpdir:
        with pytest.raises(ExportError):
            ExportManager.export_to_formats(report, ["pdf", "json"], os.path.join(tmpdir, "r.json"))
        assert os.path.exists(os.path.join(tmpdir, "r.json"))


def test_export_requires_command():
    """Test that a report without a command cannot be exported."""
    with tempfile.TemporaryDirectory() as tmpdir:
        exporter = json_exporter.JsonExporter(ExperimentReport(""), os.path.join(tmpdir, "x.json"))
        with pytest.raises(ExportError):
            exporter.export()


def test_generated_filename_is_sanitized():
    """Test default output names."""
    exporter = markdown_exporter.MarkdownExporter(ExperimentReport("a/b c"))
    path = exporter.generate_output_path("out")
    assert path.startswith(os.path.join("out", "a_b_c_"))
    assert path.endswith(".md")
    assert "csv" in ExportManager.get_available_formats()


def run_all_tests():
    """Run all tests."""
    print("=" * 60)
    print("Report export - Test Suite")
    print("=" * 60)
    tests = [
        test_to_jsonable,
        test_report_verdicts_and_exit_code,
        test_report_save_and_load,
        test_report_schema_mismatch,
        test_export_all_formats,
        test_export_unknown_format,
        test_export_requires_command,
        test_generated_filename_is_sanitized,
    ]
    try:
        for test in tests:
            test()
            print(f"✓ {test.__name__} passed")
        print("✓ ALL TESTS PASSED!")
        return True
    except AssertionError as e:
        print(f"\n✗ TEST FAILED: {e}")
        return False


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
