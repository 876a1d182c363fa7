"""Tests for scenario configuration and grid loading."""
import pytest

from relativity_lab.config import ENV_C, ENV_SEED, ENV_TOLERANCE, ScenarioConfig, load_scenario_config
from relativity_lab.errors import ConfigError
from relativity_lab.grids import load_grid
from relativity_lab.synchronization import SyncConvention, TimeBasis


class TestScenarioConfig:
    def test_defaults_resolve(self):
        config = ScenarioConfig()
        assert config.as_dict() == {
            "length": 1.0,
            "eps": 0.0,
            "convention": "both",
            "basis": "both",
            "c": 1.0,
            "seed": 0,
            "tolerance": 1e-10,
        }
        assert config.conventions() == (SyncConvention.EINSTEIN, SyncConvention.POINCARE_ETHER)
        assert config.bases() == (TimeBasis.TRUE_TIME, TimeBasis.LOCAL_TIME)

    def test_single_choices(self):
        config = ScenarioConfig(convention="poincare", basis="local")
        assert config.conventions() == (SyncConvention.POINCARE_ETHER,)
        assert config.bases() == (TimeBasis.LOCAL_TIME,)

    @pytest.mark.parametrize(
        "kwargs",
        [{"eps": 1.0}, {"length": 0.0}, {"c": -1.0}, {"tolerance": 0.0}, {"convention": "galileo"}, {"basis": "proper"}, {"seed": -1}],
    )
    def test_invalid_values_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            ScenarioConfig(**kwargs)

    def test_report_time_conversion(self):
        assert ScenarioConfig(c=2.0).to_report_time(2.5) == 1.25


class TestLoadScenarioConfig:
    def test_explicit_values_win(self):
        config, source = load_scenario_config(seed=7, tolerance=1e-8, environ={ENV_SEED: "3", ENV_TOLERANCE: "1e-6"})
        assert (config.seed, config.tolerance) == (7, 1e-8)
        assert source.seed_env is None and source.tolerance_env is None

    def test_environment_fills_gaps(self):
        config, source = load_scenario_config(environ={ENV_SEED: "42", ENV_C: "2.0"})
        assert config.seed == 42 and config.c == 2.0
        assert source.seed_env == ENV_SEED and source.c_env == ENV_C
        assert source.tolerance_env is None

    def test_defaults_without_environment(self):
        config, _ = load_scenario_config(eps=0.6, environ={})
        assert config.eps.epsilon == 0.6
        assert config.tolerance == 1e-10

    def test_malformed_environment_value(self):
        with pytest.raises(ConfigError):
            load_scenario_config(environ={ENV_SEED: "forty-two"})

    def test_negative_environment_seed(self):
        with pytest.raises(ConfigError):
            load_scenario_config(environ={ENV_SEED: "-5"})


class TestLoadGrid:
    def test_sample_grid(self, sample_grid_path):
        points = load_grid(sample_grid_path)
        assert len(points) == 7
        assert points[1].as_dict() == {"length": 1.0, "eps": 0.6}

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_grid(tmp_path / "absent.yaml")

    @pytest.mark.parametrize(
        "contents",
        [
            "points: []\n",
            "- {length: 1.0, eps: 0.5}\n",
            "points:\n  - {length: 1.0}\n",
            "points:\n  - {length: 1.0, eps: 1.2}\n",
            "points:\n  - {length: -1.0, eps: 0.2}\n",
            "points:\n  - {length: abc, eps: 0.2}\n",
            "points:\n  - 0.5\n",
        ],
    )
    def test_invalid_grids(self, tmp_path, contents):
        path = tmp_path / "grid.yaml"
        path.write_text(contents, encoding="utf-8")
        with pytest.raises(ConfigError):
            load_grid(path)
