"""Tests for the run_scenario command line entry-point."""
import json

import pytest

from relativity_lab.config import ENV_SEED, ENV_TOLERANCE
from relativity_lab.reports import Report, read_sweep
from scripts import run_scenario


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in (ENV_SEED, ENV_TOLERANCE, "RELATIVITY_LAB_C"):
        monkeypatch.delenv(name, raising=False)


def run_json(capsys, argv):
    code = run_scenario.main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


class TestRoundtripCommand:
    def test_reference_scenario(self, capsys):
        code, payload = run_json(capsys, ["roundtrip", "--eps", "0.6", "--length", "1.0"])
        assert code == 0
        assert payload["verdict"] == "PASS"
        assert payload["results"]["true_time"]["t2"] == pytest.approx(2.0, rel=1e-12)
        assert payload["results"]["true_time"]["t3"] == pytest.approx(2.5, rel=1e-12)
        assert payload["results"]["kappa"]["true"] == pytest.approx(0.8, rel=1e-12)
        assert payload["results"]["kappa"]["local"] == pytest.approx(0.5, rel=1e-12)
        assert all(assertion["pass"] for assertion in payload["assertions"])

    def test_rest_scenario_text(self, capsys):
        assert run_scenario.main(["roundtrip", "--eps", "0"]) == 0
        out = capsys.readouterr().out
        assert "verdict: PASS" in out
        assert "  kappa.true = 0.5" in out
        assert "  kappa.local = 0.5" in out

    @pytest.mark.parametrize("value", ["1.0", "-1", "nan", "fast"])
    def test_invalid_velocity_is_usage_error(self, value, capsys):
        with pytest.raises(SystemExit) as excinfo:
            run_scenario.main(["roundtrip", "--eps", value])
        assert excinfo.value.code == 2
        assert "eps" in capsys.readouterr().err

    def test_rigid_rod(self, capsys):
        code, payload = run_json(capsys, ["roundtrip", "--eps", "0.6", "--rigid-rod"])
        assert code == 0
        assert payload["results"]["contraction_anomaly"] == pytest.approx(0.25, rel=1e-12)

    def test_report_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert run_scenario.main(["roundtrip", "--eps", "0.3", "--format", "json", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == capsys.readouterr().out

    def test_output_is_deterministic(self, capsys):
        argv = ["roundtrip", "--eps", "0.37", "--length", "2.5", "--c", "3.0", "--seed", "9"]
        first = run_json(capsys, argv)
        second = run_json(capsys, argv)
        assert first == second
        assert first[1]["config"]["seed"] == 9


class TestKappaSweepCommand:
    def test_sweep_is_deterministic_and_lossless(self, tmp_path, capsys):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            argv = ["kappa-sweep", "--from", "-0.8", "--to", "0.8", "--step", "0.2", "--seed", "4", "--out", str(path)]
            assert run_scenario.main(argv) == 0
        capsys.readouterr()
        assert paths[0].read_bytes() == paths[1].read_bytes()
        frame = read_sweep(paths[0])
        assert len(frame) == 9
        assert (frame["kappa_true_sim"] - frame["kappa_true_formula"]).abs().max() <= 1e-10

    def test_sweep_preserves_start_value(self, tmp_path, capsys):
        path = tmp_path / "precise.csv"
        argv = ["kappa-sweep", "--from", "0.1234567890123456", "--to", "0.1234567890123456", "--step", "0.1"]
        assert run_scenario.main([*argv, "--out", str(path)]) == 0
        capsys.readouterr()
        assert read_sweep(path)["eps"].tolist() == [0.1234567890123456]

    def test_requires_out(self):
        with pytest.raises(SystemExit) as excinfo:
            run_scenario.main(["kappa-sweep", "--from", "0", "--to", "0.5", "--step", "0.1"])
        assert excinfo.value.code == 2

    def test_reversed_range(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            run_scenario.main(
                ["kappa-sweep", "--from", "0.5", "--to", "0", "--step", "0.1", "--out", str(tmp_path / "x.csv")]
            )
        assert excinfo.value.code == 2


class TestGroupAuditCommand:
    def test_small_run(self, capsys):
        code, payload = run_json(capsys, ["group-audit", "--samples", "200", "--seed", "42"])
        assert code == 0
        assert payload["results"]["seed"] == 42

    def test_degenerate_run(self, capsys):
        assert run_json(capsys, ["group-audit", "--samples", "1"])[0] == 0

    def test_zero_samples_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            run_scenario.main(["group-audit", "--samples", "0"])
        assert excinfo.value.code == 2

    def test_negative_seed_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            run_scenario.main(["group-audit", "--samples", "2", "--seed", "-1"])
        assert excinfo.value.code == 2
        assert "non-negative" in capsys.readouterr().err

    def test_negative_environment_seed(self, monkeypatch, capsys):
        monkeypatch.setenv(ENV_SEED, "-5")
        assert run_scenario.main(["group-audit", "--samples", "2"]) == 2
        assert "seed" in capsys.readouterr().err

    def test_seed_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv(ENV_SEED, "17")
        _, payload = run_json(capsys, ["group-audit", "--samples", "5"])
        assert payload["config"]["seed"] == 17


class TestEquivalenceCommand:
    def test_sample_grid(self, sample_grid_path, capsys):
        code, payload = run_json(capsys, ["equivalence", "--grid", str(sample_grid_path)])
        assert code == 0
        assert payload["results"]["max_discrepancy"] <= 1e-10

    def test_random_points(self, capsys):
        code, payload = run_json(capsys, ["equivalence", "--points", "100", "--seed", "2"])
        assert code == 0
        assert len(payload["results"]["points"]) == 100

    def test_single_point(self, capsys):
        code, payload = run_json(capsys, ["equivalence", "--eps", "0", "--length", "1"])
        assert code == 0
        assert payload["results"]["max_discrepancy"] == 0.0

    def test_missing_grid_file(self, tmp_path, capsys):
        assert run_scenario.main(["equivalence", "--grid", str(tmp_path / "none.yaml")]) == 2
        assert "not found" in capsys.readouterr().err


class TestOtherCommands:
    def test_rod(self, capsys):
        code, payload = run_json(capsys, ["rod", "--eps", "0.6", "--convention", "einstein"])
        assert code == 0
        assert {m["convention"] for m in payload["results"]["measurements"]} == {"einstein"}

    def test_compose(self, capsys):
        code, payload = run_json(capsys, ["compose", "--eps", "0.5", "--eps2", "0.5"])
        assert code == 0
        assert payload["results"]["composed_velocity"] == pytest.approx(0.8, rel=1e-12)

    def test_failed_assertion_sets_exit_status(self, monkeypatch, capsys):
        def failing_rod(config):
            report = Report("rod", config.as_dict())
            report.check("forced", 1.0, 1e-10)
            return report

        monkeypatch.setattr(run_scenario, "run_rod", failing_rod)
        assert run_scenario.main(["rod"]) == 1
        assert "verdict: FAIL" in capsys.readouterr().out
