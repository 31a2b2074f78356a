"""Data types for the 1D viscous shallow-water solver."""

from dataclasses import dataclass, field, fields

import numpy as np

from workflow.errors import ConfigError

# Water heights below this are treated as dry and rejected.
DRY_FLOOR = 1e-8


@dataclass(frozen=True)
class SweConfig:
    """Physical and discretization parameters of a DNS run.

    Defaults reproduce the reference setup: a 40-unit periodic channel with a
    parabolic bump of height 0.48 and width 8 in the middle.
    """

    L: float = 40.0
    g: float = 32.0
    nu: float = 0.5
    dx: float = 0.1
    dt_fine: float = 0.0005
    topo_height: float = 0.48
    topo_width: float = 8.0

    def __post_init__(self) -> None:
        if self.dx <= 0:
            raise ConfigError(f"dx must be positive, got {self.dx}")
        if self.dt_fine <= 0:
            raise ConfigError(f"dt_fine must be positive, got {self.dt_fine}")
        if self.nu < 0:
            raise ConfigError(f"nu must be non-negative, got {self.nu}")
        if self.g <= 0:
            raise ConfigError(f"g must be positive, got {self.g}")
        if self.topo_height < 0:
            raise ConfigError(f"topo_height must be non-negative, got {self.topo_height}")
        if not 0 <= self.topo_width < self.L:
            raise ConfigError(f"topo_width must lie in [0, L), got {self.topo_width}")
        cells = self.L / self.dx
        if round(cells) < 1 or abs(cells - round(cells)) > 1e-9 * cells:
            raise ConfigError(f"L/dx must be a positive integer, got {cells}")

    @property
    def n(self) -> int:
        """Number of cells."""
        return int(round(self.L / self.dx))

    @property
    def x(self) -> np.ndarray:
        """Sample points j*dx, j = 0..n-1 (x = L wraps onto x = 0)."""
        return np.arange(self.n) * self.dx

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Topography:
    """Static bottom elevation sampled on the grid."""

    z: np.ndarray

    @property
    def n(self) -> int:
        return int(self.z.shape[0])


@dataclass
class SweState:
    """Water height and momentum per cell at time t."""

    h: np.ndarray
    hu: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        self.h = np.asarray(self.h, dtype=float)
        self.hu = np.asarray(self.hu, dtype=float)
        if self.h.shape != self.hu.shape or self.h.ndim != 1:
            raise ConfigError(
                f"h and hu must be 1D arrays of equal length, got {self.h.shape} and {self.hu.shape}"
            )

    @property
    def u(self) -> np.ndarray:
        return self.hu / self.h

    def flatten(self) -> np.ndarray:
        """Snapshot vector [h ⧺ hu]."""
        return np.concatenate([self.h, self.hu])

    @classmethod
    def from_flat(cls, x: np.ndarray, t: float = 0.0) -> "SweState":
        n = x.shape[0] // 2
        return cls(h=x[:n].copy(), hu=x[n:].copy(), t=t)


@dataclass
class Trajectory:
    """Time-ordered snapshots sampled every ``sample_dt``.

    ``states`` has one row per snapshot: n values of h followed by n values of hu.
    """

    times: np.ndarray
    states: np.ndarray
    sample_dt: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        if self.states.shape[0] != self.times.shape[0]:
            raise ConfigError(
                f"{self.times.shape[0]} times but {self.states.shape[0]} snapshots"
            )

    def __len__(self) -> int:
        return int(self.states.shape[0])

    @property
    def n(self) -> int:
        return int(self.states.shape[1] // 2)

    @property
    def h(self) -> np.ndarray:
        return self.states[:, : self.n]

    @property
    def hu(self) -> np.ndarray:
        return self.states[:, self.n :]

    @property
    def columns(self) -> np.ndarray:
        """Snapshots as an N x T matrix (one column per time)."""
        return self.states.T

    def initial_state(self) -> SweState:
        return SweState.from_flat(self.states[0], t=float(self.times[0]))
