"""TypedDict and container definitions for generated datasets."""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
from typing_extensions import TypedDict

from swe_core.types import Trajectory


class IcParams(TypedDict):
    """Sinusoidal perturbation of a shifted flat state."""

    h0: float  # base mean level
    u0: float  # base mean velocity
    s_h: float  # relative shift of the mean level
    s_u: float  # relative shift of the mean velocity
    a: float  # relative height perturbation, [0, 0.05]
    d: float  # relative velocity perturbation, [0, 0.05]
    k: int  # height wavenumber
    p: int  # velocity wavenumber
    omega1: float  # phases in [0, 2pi)
    omega2: float


class TestSuiteSpec(TypedDict):
    """One row of the testing matrix."""

    name: str
    J: int  # trajectory count
    h_mean: float  # h0 (1 + s_h)
    u_mean: float  # u0 (1 + s_u)
    alpha_values: List[float]  # inf means "no transfer"


class TrajectoryRecord(TypedDict):
    """Manifest entry for one generated trajectory."""

    index: int
    seed: int
    spawn_key: List[int]
    offset: int
    snapshots: int
    params: IcParams


@dataclass
class TrainingSet:
    """Concatenated training trajectories with their provenance."""

    trajectories: List[Trajectory]
    records: List[TrajectoryRecord]

    @property
    def X(self) -> np.ndarray:
        """All snapshots column-wise, N x sum(T_i)."""
        return np.hstack([traj.columns for traj in self.trajectories])

    @property
    def boundaries(self) -> List[int]:
        """Column offset where each trajectory starts (first is 0)."""
        return [record["offset"] for record in self.records]


@dataclass
class SuiteRun:
    """True and predicted trajectories sharing one set of initial conditions."""

    suite: TestSuiteSpec
    params: List[IcParams]
    truth: List[Trajectory]
    predictions: Dict[float, List[Trajectory]] = field(default_factory=dict)
