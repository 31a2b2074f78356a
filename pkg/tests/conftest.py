"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest

from esn.types import EsnConfig
from swe_core.types import SweConfig
from workflow.config import ExperimentConfig


def make_swe(**overrides) -> SweConfig:
    """Coarse 50-cell grid: same physics, cheap to integrate."""
    values = {"dx": 0.8, "dt_fine": 0.004}
    values.update(overrides)
    return SweConfig(**values)


def make_experiment(output_dir: Path, **overrides) -> ExperimentConfig:
    """Tiny end-to-end experiment on the coarse grid."""
    swe = make_swe()
    values = {
        "swe": swe,
        "esn": EsnConfig(D=80, N=2 * swe.n, density=0.1, seed=5),
        "M": 2,
        "J": 2,
        "train_t_end": 3.0,
        "test_t_end": 1.0,
        "transfer_t_end": 2.0,
        "suites": ("TEST_0", "TEST_4"),
        "output_dir": output_dir,
    }
    values.update(overrides)
    return ExperimentConfig(**values)


@pytest.fixture
def swe_cfg() -> SweConfig:
    return make_swe()


@pytest.fixture
def experiment(tmp_path) -> ExperimentConfig:
    return make_experiment(tmp_path / "run")
