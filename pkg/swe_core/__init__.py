"""Direct numerical simulation of the 1D viscous shallow-water equations."""

from .io import read_trajectory_csv, write_trajectory_csv
from .scheme import cfl_number, step
from .simulate import integrate, mass, momentum
from .topography import bump, flat_initial_condition, make_topography
from .types import DRY_FLOOR, SweConfig, SweState, Topography, Trajectory

__all__ = [
    "DRY_FLOOR",
    "SweConfig",
    "SweState",
    "Topography",
    "Trajectory",
    "bump",
    "cfl_number",
    "flat_initial_condition",
    "integrate",
    "make_topography",
    "mass",
    "momentum",
    "read_trajectory_csv",
    "step",
    "write_trajectory_csv",
]
