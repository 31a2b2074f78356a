"""Bump topography and flat (lake-level) initial conditions."""

from typing import Optional, Union

import numpy as np

from workflow.errors import DryCellError

from .types import SweConfig, SweState, Topography


def bump(x: Union[float, np.ndarray], cfg: SweConfig) -> np.ndarray:
    """Parabolic bump of height H and width W centred at L/2, zero elsewhere."""
    x = np.asarray(x, dtype=float)
    half_width = 0.5 * cfg.topo_width
    if half_width == 0:
        return np.zeros_like(x)
    s = (x - 0.5 * cfg.L) / half_width
    return np.where(np.abs(s) <= 1.0, cfg.topo_height * (1.0 - s**2), 0.0)


def make_topography(cfg: SweConfig) -> Topography:
    """Evaluate the bump on the grid points."""
    return Topography(z=bump(cfg.x, cfg))


def flat_initial_condition(
    cfg: SweConfig,
    h0: float,
    u0: float,
    topo: Optional[Topography] = None,
) -> SweState:
    """Flat free surface h + z = h0 moving with uniform velocity u0."""
    if topo is None:
        topo = make_topography(cfg)
    z_max = float(np.max(topo.z)) if topo.n else 0.0
    if h0 <= z_max:
        raise DryCellError(f"mean level {h0} does not cover the bump crest {z_max}")
    h = h0 - topo.z
    return SweState(h=h, hu=h * u0, t=0.0)
