"""Well-balanced central-upwind finite-volume step for the viscous 1D SWE.

Space: minmod-limited piecewise-linear reconstruction of h, h + z and hu,
hydrostatic reconstruction at interfaces, central-upwind numerical flux and a
centred topography source. Time: two-stage SSP Runge-Kutta with a fixed step.
Periodic boundaries are handled with ``np.roll``.
"""

from typing import Optional, Tuple

import numpy as np

from workflow.errors import DimensionError, DryCellError, StepSizeError

from .topography import make_topography
from .types import DRY_FLOOR, SweConfig, SweState, Topography


def minmod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Smaller-magnitude argument where signs agree, zero otherwise."""
    return np.where(a * b > 0.0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def _faces(v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Limited (east, west) face values of each cell."""
    slope = minmod(np.roll(v, -1) - v, v - np.roll(v, 1))
    return v + 0.5 * slope, v - 0.5 * slope


def central_upwind_flux(
    h_l: np.ndarray,
    q_l: np.ndarray,
    h_r: np.ndarray,
    q_r: np.ndarray,
    g: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Central-upwind flux between left and right interface states."""
    u_l = np.divide(q_l, h_l, out=np.zeros_like(q_l), where=h_l > 0)
    u_r = np.divide(q_r, h_r, out=np.zeros_like(q_r), where=h_r > 0)
    c_l = np.sqrt(g * h_l)
    c_r = np.sqrt(g * h_r)

    a_plus = np.maximum(np.maximum(u_l + c_l, u_r + c_r), 0.0)
    a_minus = np.minimum(np.minimum(u_l - c_l, u_r - c_r), 0.0)
    spread = a_plus - a_minus
    safe = np.where(spread > 0.0, spread, 1.0)

    f_h_l, f_h_r = q_l, q_r
    f_q_l = q_l * u_l + 0.5 * g * h_l**2
    f_q_r = q_r * u_r + 0.5 * g * h_r**2

    flux_h = (a_plus * f_h_l - a_minus * f_h_r + a_plus * a_minus * (h_r - h_l)) / safe
    flux_q = (a_plus * f_q_l - a_minus * f_q_r + a_plus * a_minus * (q_r - q_l)) / safe
    flux_h = np.where(spread > 0.0, flux_h, 0.0)
    flux_q = np.where(spread > 0.0, flux_q, 0.0)
    return flux_h, flux_q


def rhs(
    h: np.ndarray,
    hu: np.ndarray,
    z: np.ndarray,
    cfg: SweConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """Semi-discrete time derivatives (dh/dt, d(hu)/dt)."""
    g, dx = cfg.g, cfg.dx

    h_e, h_w = _faces(h)
    eta_e, eta_w = _faces(h + z)
    q_e, q_w = _faces(hu)
    z_e = eta_e - h_e
    z_w = eta_w - h_w
    u_e = q_e / h_e
    u_w = q_w / h_w

    # Interface j+1/2 sits between cell j (east face) and cell j+1 (west face).
    h_r = np.roll(h_w, -1)
    z_r = np.roll(z_w, -1)
    u_r = np.roll(u_w, -1)
    z_star = np.maximum(z_e, z_r)
    h_l_star = np.maximum(0.0, h_e + z_e - z_star)
    h_r_star = np.maximum(0.0, h_r + z_r - z_star)

    flux_h, flux_q = central_upwind_flux(h_l_star, h_l_star * u_e, h_r_star, h_r_star * u_r, g)

    east_q = flux_q + 0.5 * g * (h_e**2 - h_l_star**2)
    west_q = np.roll(flux_q, 1) + 0.5 * g * (h_w**2 - np.roll(h_r_star, 1) ** 2)
    source = -0.5 * g * (h_e + h_w) * (z_e - z_w)

    dh_dt = -(flux_h - np.roll(flux_h, 1)) / dx
    dq_dt = -(east_q - west_q - source) / dx
    if cfg.nu > 0.0:
        dq_dt = dq_dt + cfg.nu * (np.roll(hu, -1) - 2.0 * hu + np.roll(hu, 1)) / dx**2
    return dh_dt, dq_dt


def cfl_number(state: SweState, cfg: SweConfig) -> float:
    """max(|u| + sqrt(g h)) * dt / dx for the fixed fine step."""
    speed = np.abs(state.hu / state.h) + np.sqrt(cfg.g * state.h)
    return float(np.max(speed)) * cfg.dt_fine / cfg.dx


def _check_wet(h: np.ndarray, t: float) -> None:
    lowest = float(np.min(h))
    if not np.isfinite(lowest) or lowest < DRY_FLOOR:
        raise DryCellError(f"water height {lowest:.3e} below dry floor at t={t:.4f}")


def step(state: SweState, cfg: SweConfig, topo: Optional[Topography] = None) -> SweState:
    """Advance one fine step dt_fine; returns a new state."""
    if topo is None:
        topo = make_topography(cfg)
    if topo.n != state.h.shape[0]:
        raise DimensionError(f"state has {state.h.shape[0]} cells, topography {topo.n}")
    _check_wet(state.h, state.t)
    cfl = cfl_number(state, cfg)
    if not cfl < 1.0:
        raise StepSizeError(f"CFL number {cfl:.3f} >= 1 at t={state.t:.4f}")

    dt, z = cfg.dt_fine, topo.z
    dh, dq = rhs(state.h, state.hu, z, cfg)
    h1 = state.h + dt * dh
    q1 = state.hu + dt * dq
    _check_wet(h1, state.t + dt)

    dh, dq = rhs(h1, q1, z, cfg)
    h2 = 0.5 * state.h + 0.5 * (h1 + dt * dh)
    q2 = 0.5 * state.hu + 0.5 * (q1 + dt * dq)
    _check_wet(h2, state.t + dt)
    return SweState(h=h2, hu=q2, t=state.t + dt)
