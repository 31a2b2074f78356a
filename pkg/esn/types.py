"""Echo-state network configuration, model and training-pair containers."""

from dataclasses import dataclass, fields, replace
from typing import Optional

import numpy as np
from scipy import sparse

from workflow.errors import ConfigError, DimensionError


@dataclass(frozen=True)
class EsnConfig:
    """Reservoir hyperparameters.

    ``lambda_`` is the ridge penalty (key ``lambda`` in config files). With
    ``lambda_relative`` the effective penalty is lambda_ * trace(RR') / D.
    """

    D: int = 5000
    N: int = 800
    beta1: float = 0.01
    beta2: float = 0.1
    density: float = 0.02
    lambda_: float = 1e-6
    lambda_relative: bool = True
    seed: int = 0
    reset_on_concat: bool = False

    def __post_init__(self) -> None:
        if self.D <= 0 or self.N <= 0:
            raise ConfigError(f"D and N must be positive, got D={self.D}, N={self.N}")
        if self.beta1 < 0:
            raise ConfigError(f"beta1 must be non-negative, got {self.beta1}")
        # beta2 > 1 is allowed on purpose: it is the echo-state negative control.
        if self.beta2 < 0:
            raise ConfigError(f"beta2 must be non-negative, got {self.beta2}")
        if not 0 < self.density <= 1:
            raise ConfigError(f"density must lie in (0, 1], got {self.density}")
        if self.lambda_ < 0:
            raise ConfigError(f"lambda must be non-negative, got {self.lambda_}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(eq=False)
class EsnModel:
    """Fixed random reservoir plus an optional trained readout.

    w_in is D x N, a is a sparse D x D matrix, w_out is N x D. The matrices are
    never modified after construction; only ``r`` changes while driving.
    """

    cfg: EsnConfig
    w_in: np.ndarray
    a: sparse.csr_matrix
    w_out: Optional[np.ndarray] = None
    r: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.w_in.shape != (self.cfg.D, self.cfg.N):
            raise DimensionError(f"w_in has shape {self.w_in.shape}, expected ({self.cfg.D}, {self.cfg.N})")
        if self.a.shape != (self.cfg.D, self.cfg.D):
            raise DimensionError(f"a has shape {self.a.shape}, expected ({self.cfg.D}, {self.cfg.D})")
        if self.w_out is not None and self.w_out.shape != (self.cfg.N, self.cfg.D):
            raise DimensionError(
                f"w_out has shape {self.w_out.shape}, expected ({self.cfg.N}, {self.cfg.D})"
            )
        if self.r is None:
            self.r = np.zeros(self.cfg.D)

    @property
    def trained(self) -> bool:
        return self.w_out is not None

    def reset(self) -> None:
        """Zero the reservoir state."""
        self.r = np.zeros(self.cfg.D)

    def with_readout(self, w_out: np.ndarray) -> "EsnModel":
        """Clone sharing w_in and a, with its own readout and a zero state."""
        return replace(self, w_out=np.array(w_out, dtype=float), r=None)


@dataclass
class StateMatrixPair:
    """Readout-transformed states R (D x T) and aligned targets X (N x T)."""

    R: np.ndarray
    X: np.ndarray

    def __post_init__(self) -> None:
        if self.R.shape[1] != self.X.shape[1]:
            raise DimensionError(f"R has {self.R.shape[1]} columns, X has {self.X.shape[1]}")

    @property
    def count(self) -> int:
        return int(self.R.shape[1])


@dataclass
class Gram:
    """Accumulated RR' (D x D), RX' (D x N) and sum of squared targets over ``count`` pairs."""

    rr: np.ndarray
    rx: np.ndarray
    count: int = 0
    xx: float = 0.0

    @classmethod
    def zeros(cls, D: int, N: int) -> "Gram":
        return cls(rr=np.zeros((D, D)), rx=np.zeros((D, N)), count=0, xx=0.0)

    @classmethod
    def from_pair(cls, pair: StateMatrixPair) -> "Gram":
        return cls(
            rr=pair.R @ pair.R.T,
            rx=pair.R @ pair.X.T,
            count=pair.count,
            xx=float(np.sum(pair.X**2)),
        )

    def add(self, R: np.ndarray, X: np.ndarray) -> None:
        self.rr += R @ R.T
        self.rx += R @ X.T
        self.count += int(R.shape[1])
        self.xx += float(np.sum(X**2))
