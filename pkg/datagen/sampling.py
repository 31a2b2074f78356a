"""Initial-condition sampling and the default testing matrix."""

import math
from typing import List, Tuple

import numpy as np

from swe_core.types import DRY_FLOOR, SweConfig, SweState, Topography
from workflow.errors import DryCellError

from .types import IcParams, TestSuiteSpec

BASE_H0 = 4.0
BASE_U0 = 2.5
MAX_AMPLITUDE = 0.05
TRAIN_K_MAX = 7
TEST_K_MAX = 4
P_MAX = 4
DEFAULT_J = 20
DEFAULT_ALPHA = 0.01

# Stream ids for SeedSequence spawn keys; one independent stream per trajectory.
TRAIN_STREAM = 0
TEST_STREAM = 1
TRANSFER_STREAM = 2

# (name, mean level, mean velocity)
_SUITE_TABLE: List[Tuple[str, float, float]] = [
    ("TEST_0", 4.0, 2.5),
    ("TEST_1", 4.0, 2.375),
    ("TEST_2", 4.0, 2.625),
    ("TEST_3", 4.0, 2.25),
    ("TEST_4", 4.0, 2.75),
    ("TEST_5", 3.92, 2.5),
    ("TEST_6", 4.08, 2.5),
    ("TEST_7", 3.8, 2.5),
    ("TEST_8", 4.2, 2.5),
]


def default_suites(J: int = DEFAULT_J, alpha: float = DEFAULT_ALPHA) -> List[TestSuiteSpec]:
    """The nine reference suites; TEST_0 carries no transfer branches."""
    suites = []
    for name, h_mean, u_mean in _SUITE_TABLE:
        alphas = [math.inf] if is_reference(h_mean, u_mean) else [0.0, alpha, math.inf]
        suites.append(TestSuiteSpec(name=name, J=J, h_mean=h_mean, u_mean=u_mean, alpha_values=alphas))
    return suites


def suite_by_name(name: str, suites: List[TestSuiteSpec]) -> TestSuiteSpec:
    for suite in suites:
        if suite["name"] == name:
            return suite
    raise KeyError(name)


def is_reference(h_mean: float, u_mean: float) -> bool:
    """True when the suite has the training regime's ambient means."""
    return math.isclose(h_mean, BASE_H0) and math.isclose(u_mean, BASE_U0)


def trajectory_rng(seed: int, stream: int, *index: int) -> Tuple[np.random.Generator, List[int]]:
    """Independent generator for one trajectory, keyed by (stream, *index)."""
    spawn_key = [stream, *index]
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(spawn_key))
    return np.random.default_rng(seq), spawn_key


def _perturbation(rng: np.random.Generator, k_max: int) -> dict:
    return {
        "a": float(rng.uniform(0.0, MAX_AMPLITUDE)),
        "d": float(rng.uniform(0.0, MAX_AMPLITUDE)),
        "k": int(rng.integers(1, k_max + 1)),
        "p": int(rng.integers(1, P_MAX + 1)),
        "omega1": float(rng.uniform(0.0, 2.0 * math.pi)),
        "omega2": float(rng.uniform(0.0, 2.0 * math.pi)),
    }


def sample_training_ic(rng: np.random.Generator, k_max: int = TRAIN_K_MAX) -> IcParams:
    """Training draw: reference means, k in 1..k_max, p in 1..4."""
    return IcParams(h0=BASE_H0, u0=BASE_U0, s_h=0.0, s_u=0.0, **_perturbation(rng, k_max))


def sample_testing_ic(rng: np.random.Generator, suite: TestSuiteSpec) -> IcParams:
    """Testing draw: the suite's shifted means, k and p in 1..4."""
    return IcParams(
        h0=BASE_H0,
        u0=BASE_U0,
        s_h=suite["h_mean"] / BASE_H0 - 1.0,
        s_u=suite["u_mean"] / BASE_U0 - 1.0,
        **_perturbation(rng, TEST_K_MAX),
    )


def realize_ic(params: IcParams, cfg: SweConfig, topo: Topography) -> SweState:
    """Evaluate the perturbed initial state on the grid."""
    x = cfg.x
    h0, u0 = params["h0"], params["u0"]
    surface = h0 * (1.0 + params["s_h"]) + params["a"] * h0 * np.sin(
        2.0 * params["k"] * math.pi * x / cfg.L + params["omega1"]
    )
    u = u0 * (1.0 + params["s_u"]) + params["d"] * u0 * np.sin(
        2.0 * params["p"] * math.pi * x / cfg.L + params["omega2"]
    )
    h = surface - topo.z
    lowest = float(np.min(h))
    if lowest < DRY_FLOOR:
        raise DryCellError(f"initial condition is dry (min h = {lowest:.3e})")
    return SweState(h=h, hu=h * u, t=0.0)
