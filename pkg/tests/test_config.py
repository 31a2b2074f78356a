"""Tests for experiment configuration and the config hash."""

import math
from pathlib import Path

import pytest

from esn.types import EsnConfig
from swe_core.types import SweConfig
from workflow.config import (
    PRESETS,
    ExperimentConfig,
    build_config,
    coerce_value,
    environment_defaults,
    load_config_file,
    make_config,
)
from workflow.errors import ConfigError

from .conftest import make_experiment


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Keep a developer's .env and SWESN_* variables out of the tests."""
    monkeypatch.delenv("SWESN_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("SWESN_WORKERS", raising=False)
    monkeypatch.chdir(tmp_path)


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "exp.cfg"
    path.write_text(text)
    return path


class TestDefaults:
    def test_full_scale(self):
        config = build_config()
        assert config.preset == "paper"
        assert config.swe.n == 400
        assert config.esn.D == 5000
        assert config.esn.N == 800
        assert (config.M, config.J) == (50, 20)
        assert config.alpha == 0.01
        assert config.output_dir == Path("runs")
        assert len(config.suite_specs()) == 9

    def test_desk_preset(self):
        config = build_config(preset="desk")
        assert config.swe.n == 100
        assert config.esn.N == 200
        assert config.esn.D == 1000
        assert (config.M, config.J) == (10, 5)
        assert config.test_t_end == 30.0
        assert config.swe.dt_fine == 0.0005
        assert config.sample_dt / config.swe.dt_fine == pytest.approx(200.0)

    def test_paper_preset_by_name(self):
        config = build_config(preset="paper")
        assert config.preset == "paper"
        assert config.config_hash() == build_config().config_hash()

    def test_full_is_an_alias_of_paper(self, tmp_path):
        assert build_config(preset="full").preset == "paper"
        assert build_config(_write(tmp_path, "preset=full\n")).config_hash() == build_config().config_hash()

    def test_every_preset_is_consistent(self):
        for name in PRESETS:
            config = build_config(preset=name)
            assert config.esn.N == 2 * config.swe.n


class TestValidation:
    def test_state_size_must_match_grid(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(esn=EsnConfig(N=100))

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            make_experiment(Path("x"), suites=("TEST_42",))

    def test_negative_alpha(self):
        with pytest.raises(ConfigError):
            make_experiment(Path("x"), alpha=-0.1)

    def test_zero_trajectories(self):
        with pytest.raises(ConfigError):
            make_experiment(Path("x"), M=0)

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            build_config(preset="laptop")

    def test_infinite_alpha_is_allowed(self):
        assert make_experiment(Path("x"), alpha=math.inf).alpha == math.inf


class TestConfigFile:
    def test_values_are_typed(self, tmp_path):
        path = _write(
            tmp_path,
            "D=300\nlambda=1e-4\nlambda_relative=false\nsuites=TEST_0,TEST_3\nalphas=0,0.1,inf\nnu=0.25\n",
        )
        values = load_config_file(path)
        assert values == {
            "D": 300,
            "lambda": 1e-4,
            "lambda_relative": False,
            "suites": ("TEST_0", "TEST_3"),
            "alphas": (0.0, 0.1, math.inf),
            "nu": 0.25,
        }

    def test_file_builds_config(self, tmp_path):
        path = _write(tmp_path, "preset=desk\nlambda=1e-4\nsuites=TEST_0,TEST_3\nalphas=0,inf\n")
        config = build_config(path)
        assert config.preset == "desk"
        assert config.esn.lambda_ == 1e-4
        assert [s["name"] for s in config.suite_specs()] == ["TEST_0", "TEST_3"]
        assert config.suite_spec("TEST_3")["alpha_values"] == [0.0, math.inf]
        assert config.suite_spec("TEST_0")["alpha_values"] == [math.inf]

    def test_comments_and_blank_lines(self, tmp_path):
        path = _write(tmp_path, "# reservoir\n\nD=300\n")
        assert load_config_file(path) == {"D": 300}

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config_file(_write(tmp_path, "gamma=3\n"))

    def test_unparseable_value(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config_file(_write(tmp_path, "D=lots\n"))

    def test_unparseable_bool(self):
        with pytest.raises(ConfigError):
            coerce_value("reset_on_concat", "maybe")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            build_config(tmp_path / "nope.cfg")

    def test_inconsistent_grid(self, tmp_path):
        with pytest.raises(ConfigError):
            build_config(_write(tmp_path, "dx=0.2\n"))


class TestPrecedence:
    def test_file_overrides_preset(self, tmp_path):
        config = build_config(_write(tmp_path, "preset=desk\nD=400\n"))
        assert config.esn.D == 400
        assert config.M == 10

    def test_cli_overrides_file(self, tmp_path):
        config = build_config(_write(tmp_path, "D=400\n"), {"D": 600, "seed": None})
        assert config.esn.D == 600
        assert config.seed == 0

    def test_cli_preset_wins(self, tmp_path):
        config = build_config(_write(tmp_path, "preset=paper\n"), {"preset": "desk"})
        assert config.preset == "desk"
        assert config.swe.n == 100

    def test_environment_below_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SWESN_WORKERS", "3")
        monkeypatch.setenv("SWESN_OUTPUT_DIR", str(tmp_path / "env_runs"))
        assert environment_defaults() == {"workers": 3, "output_dir": tmp_path / "env_runs"}

        config = build_config(_write(tmp_path, "workers=2\n"))
        assert config.workers == 2
        assert config.output_dir == tmp_path / "env_runs"

    def test_dotenv_file(self, tmp_path):
        (tmp_path / ".env").write_text("SWESN_WORKERS=4\n")
        assert build_config().workers == 4


class TestConfigHash:
    def test_stable(self):
        a = build_config(preset="desk")
        b = build_config(preset="desk")
        assert a.config_hash() == b.config_hash()
        assert len(a.config_hash()) == 16

    def test_ignores_run_settings(self):
        a = make_experiment(Path("a"), workers=1)
        b = make_experiment(Path("b"), workers=4)
        assert a.config_hash() == b.config_hash()

    def test_tracks_results_settings(self):
        base = make_experiment(Path("a"))
        assert base.config_hash() != make_experiment(Path("a"), alpha=0.1).config_hash()
        assert base.config_hash() != make_experiment(Path("a"), swe=SweConfig(dx=0.8, dt_fine=0.004, nu=0.4)).config_hash()

    def test_suite_index_ignores_selection(self):
        selected = make_experiment(Path("a"), suites=("TEST_4",))
        assert selected.suite_index("TEST_4") == 4
        assert selected.suite_index("TEST_0") == 0
        with pytest.raises(ConfigError):
            selected.suite_spec("TEST_12")


class TestMakeConfig:
    def test_sections(self):
        config = make_config({"dx": 0.8, "dt_fine": 0.004, "N": 100, "D": 50, "M": 3})
        assert config.swe.n == 50
        assert config.esn.D == 50
        assert config.M == 3

    def test_lambda_alias(self):
        config = make_config({"lambda": 1e-3})
        assert config.esn.lambda_ == 1e-3
        with pytest.raises(ConfigError):
            make_config({"lambda_": 1e-3})
