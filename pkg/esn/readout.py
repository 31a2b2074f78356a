"""Closed-form readout fitting: ridge training and transfer correction."""

import math
from typing import Tuple, Union

import numpy as np
from scipy import linalg

from workflow.errors import ConfigError, DimensionError, RankDeficiencyError, UntrainedModelError

from .types import EsnModel, Gram, StateMatrixPair

# Smallest acceptable squared ratio of Cholesky pivots before a system counts as singular.
PIVOT_RATIO_FLOOR = 1e-14

# alpha value meaning "reuse W_out as is".
SKIP_TRANSFER = math.inf

PairLike = Union[StateMatrixPair, Gram]


def _gram(pair: PairLike) -> Gram:
    return pair if isinstance(pair, Gram) else Gram.from_pair(pair)


def _spd_solve(matrix: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    """Solve matrix @ X = rhs for symmetric positive-definite matrix."""
    try:
        factor, lower = linalg.cho_factor(matrix, lower=True, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        raise RankDeficiencyError(f"{what}: system is not positive definite ({e})") from e
    pivots = np.abs(np.diag(factor))
    if pivots.min() ** 2 < PIVOT_RATIO_FLOOR * pivots.max() ** 2:
        raise RankDeficiencyError(f"{what}: system is numerically singular")
    return linalg.cho_solve((factor, lower), rhs)


def train(pair: PairLike, lam: float) -> np.ndarray:
    """Ridge readout W_out = ((RR' + lam I)^-1 R X')', shape N x D."""
    if lam < 0:
        raise ConfigError(f"lambda must be non-negative, got {lam}")
    gram = _gram(pair)
    D = gram.rr.shape[0]
    system = gram.rr + lam * np.eye(D)
    return _spd_solve(system, gram.rx, "ridge training").T


def transfer_update(
    model: EsnModel,
    pair_star: PairLike,
    alpha: float,
) -> Tuple[np.ndarray, EsnModel]:
    """Penalized correction dW fitted on target-regime pairs.

    dW = ((R*R*' + alpha I)^-1 (R*X*' - R*R*' W_out'))'. Returns dW and a
    clone of the model carrying W_out + dW; the input model is untouched.
    alpha = SKIP_TRANSFER returns a zero correction.
    """
    if model.w_out is None:
        raise UntrainedModelError("transfer needs a trained readout")
    if alpha < 0 or math.isnan(alpha):
        raise ConfigError(f"alpha must be non-negative, got {alpha}")
    if math.isinf(alpha):
        delta = np.zeros_like(model.w_out)
        return delta, model.with_readout(model.w_out)

    gram = _gram(pair_star)
    if gram.rx.shape != (model.cfg.D, model.cfg.N):
        raise DimensionError(f"transfer pairs have shape {gram.rx.shape}, model expects ({model.cfg.D}, {model.cfg.N})")
    system = gram.rr + alpha * np.eye(model.cfg.D)
    rhs = gram.rx - gram.rr @ model.w_out.T
    delta = _spd_solve(system, rhs, "transfer update").T
    return delta, model.with_readout(model.w_out + delta)


def ridge_objective(w_out: np.ndarray, pair: StateMatrixPair, lam: float) -> float:
    """||W R - X||^2 + lam ||W||^2 (Frobenius)."""
    residual = w_out @ pair.R - pair.X
    return float(np.sum(residual**2) + lam * np.sum(w_out**2))


def ridge_gradient(w_out: np.ndarray, pair: StateMatrixPair, lam: float) -> np.ndarray:
    """Gradient of ridge_objective with respect to W."""
    return 2.0 * ((w_out @ pair.R - pair.X) @ pair.R.T + lam * w_out)


def transfer_objective(
    delta: np.ndarray,
    w_out: np.ndarray,
    pair_star: StateMatrixPair,
    alpha: float,
) -> float:
    """||(W_out + dW) R* - X*||^2 + alpha ||dW||^2 (Frobenius)."""
    residual = (w_out + delta) @ pair_star.R - pair_star.X
    return float(np.sum(residual**2) + alpha * np.sum(delta**2))


def training_residual(w_out: np.ndarray, gram: Gram) -> float:
    """Relative one-step residual ||W R - X|| / ||X|| from accumulated sums."""
    if gram.xx <= 0:
        return 0.0
    fit = float(np.sum((w_out @ gram.rr) * w_out))
    cross = float(np.sum(w_out * gram.rx.T))
    return math.sqrt(max(fit - 2.0 * cross + gram.xx, 0.0) / gram.xx)


def transfer_limit(model: EsnModel, pair_star: StateMatrixPair) -> Tuple[np.ndarray, EsnModel]:
    """alpha -> 0+ limit of transfer_update: minimum-norm dW = (X* - W_out R*) pinv(R*).

    Defined even when R*R*' is singular (fewer transfer pairs than D).
    """
    if model.w_out is None:
        raise UntrainedModelError("transfer needs a trained readout")
    if pair_star.R.shape[0] != model.cfg.D or pair_star.X.shape[0] != model.cfg.N:
        raise DimensionError(f"transfer pairs do not match model D={model.cfg.D}, N={model.cfg.N}")
    misfit = pair_star.X - model.w_out @ pair_star.R
    solution, _, _, _ = linalg.lstsq(pair_star.R.T, misfit.T)
    delta = solution.T
    return delta, model.with_readout(model.w_out + delta)
