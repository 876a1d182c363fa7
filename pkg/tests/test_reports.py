"""Tests for report rendering and sweep files."""
import json

import jsonschema
import pandas as pd
import pytest

from relativity_lab.reports import (
    SWEEP_COLUMNS,
    Assertion,
    Report,
    read_sweep,
    render,
    render_json,
    render_text,
    sweep_frame,
    validate_report,
    write_report,
    write_sweep,
)


@pytest.fixture
def report():
    report = Report("roundtrip", {"length": 1.0, "eps": 0.6, "seed": 3})
    report.results["true_time"] = {"t2": 2.0000000000000004, "t3": 2.5}
    report.check("closed_form_t2", 2.2e-16, 1e-10)
    report.check_exceeds("true_time_asymmetry", 1.5, 1e-6)
    return report


class TestAssertion:
    def test_within(self):
        assert Assertion.within("a", 1e-12, 1e-10).passed
        assert not Assertion.within("a", 1e-9, 1e-10).passed

    def test_exceeds(self):
        assert Assertion.exceeds("b", 1e-5, 1e-6).passed
        assert not Assertion.exceeds("b", 1e-6, 1e-6).passed


class TestReport:
    def test_verdict(self, report):
        assert report.verdict == "PASS"
        report.check("broken", 1.0, 1e-10)
        assert report.verdict == "FAIL"

    def test_json_matches_schema_and_preserves_floats(self, report):
        payload = json.loads(render_json(report))
        assert list(payload) == ["command", "config", "results", "assertions", "verdict"]
        assert payload["results"]["true_time"]["t2"] == 2.0000000000000004
        assert payload["assertions"][0] == {
            "name": "closed_form_t2",
            "max_deviation": 2.2e-16,
            "tolerance": 1e-10,
            "pass": True,
            "mode": "within",
        }

    def test_json_is_deterministic(self, report):
        assert render(report, "json") == render(report, "json")

    def test_schema_rejects_missing_verdict(self, report):
        payload = report.as_dict()
        del payload["verdict"]
        with pytest.raises(jsonschema.ValidationError):
            validate_report(payload)

    def test_text_rendering(self, report):
        text = render_text(report)
        assert text.startswith("command: roundtrip\nverdict: PASS\n")
        assert "  true_time.t2 = 2.0000000000000004" in text
        assert "  PASS true_time_asymmetry: 1.5 > 1e-06" in text

    def test_unknown_format(self, report):
        with pytest.raises(ValueError):
            render(report, "yaml")

    def test_write_report(self, report, tmp_path):
        path = write_report(report, tmp_path / "nested" / "report.json")
        assert path.read_text(encoding="utf-8") == render_json(report)


class TestSweepFiles:
    def test_round_trip_is_lossless(self, tmp_path):
        frame = sweep_frame(
            [
                {"eps": 0.30000000000000004, "kappa_true_sim": 0.65, "kappa_true_formula": 0.65, "kappa_local": 0.5},
                {"eps": -0.1, "kappa_true_sim": 0.45000000000000001, "kappa_true_formula": 0.45, "kappa_local": 0.5},
            ]
        )
        assert frame["eps"].tolist() == [-0.1, 0.30000000000000004]
        path = write_sweep(frame, tmp_path / "sweep.csv")
        assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(SWEEP_COLUMNS)
        pd.testing.assert_frame_equal(read_sweep(path), frame, check_exact=True)

    def test_missing_columns_rejected(self, tmp_path):
        with pytest.raises(KeyError):
            write_sweep(pd.DataFrame({"eps": [0.0]}), tmp_path / "bad.csv")

    def test_unexpected_header_rejected(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_sweep(path)
