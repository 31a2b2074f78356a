"""Time integration and conserved quantities."""

from typing import Optional

import numpy as np

from workflow.errors import ConfigError

from .scheme import step
from .topography import make_topography
from .types import SweConfig, SweState, Topography, Trajectory


def ratio_to_int(numerator: float, denominator: float, what: str) -> int:
    """Integer k with numerator == k * denominator, or ConfigError."""
    k = int(round(numerator / denominator))
    if k < 0 or abs(k * denominator - numerator) > 1e-9 * max(abs(numerator), denominator):
        raise ConfigError(f"{what}: {numerator} is not an integer multiple of {denominator}")
    return k


def integrate(
    state: SweState,
    cfg: SweConfig,
    t_end: float,
    sample_dt: float,
    topo: Optional[Topography] = None,
) -> Trajectory:
    """Run the DNS from ``state`` to ``t_end`` (relative), sampling every sample_dt.

    Snapshots are taken at t = 0, sample_dt, ..., t_end inclusive.
    """
    if topo is None:
        topo = make_topography(cfg)
    steps_per_sample = ratio_to_int(sample_dt, cfg.dt_fine, "sample_dt")
    if steps_per_sample == 0:
        raise ConfigError("sample_dt must be positive")
    n_samples = ratio_to_int(t_end, sample_dt, "t_end")

    t0 = state.t
    states = np.empty((n_samples + 1, 2 * state.h.shape[0]))
    states[0] = state.flatten()
    current = state
    fine = 0
    for k in range(1, n_samples + 1):
        for _ in range(steps_per_sample):
            current = step(current, cfg, topo)
            fine += 1
            # Recompute time from the step count so it never drifts.
            current.t = t0 + fine * cfg.dt_fine
        states[k] = current.flatten()

    times = t0 + np.arange(n_samples + 1) * sample_dt
    return Trajectory(times=times, states=states, sample_dt=sample_dt)


def mass(state: SweState, cfg: SweConfig) -> float:
    """Total water volume sum(h) * dx."""
    return float(np.sum(state.h) * cfg.dx)


def momentum(state: SweState, cfg: SweConfig) -> float:
    """Total momentum sum(hu) * dx."""
    return float(np.sum(state.hu) * cfg.dx)
