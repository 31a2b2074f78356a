"""Reservoir construction, driving and autonomous prediction."""

from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

from swe_core.types import Trajectory
from workflow.errors import ConstructionError, DimensionError, UntrainedModelError

from .types import EsnConfig, EsnModel, Gram, StateMatrixPair

# Below this size the spectral radius comes from a dense eigensolver.
DENSE_EIG_MAX_D = 200
POWER_TOL = 1e-8
POWER_MAXITER = 10_000
MAX_BUILD_RETRIES = 5
GRAM_CHUNK = 1000


def sparse_uniform(D: int, density: float, rng: np.random.Generator) -> sparse.csr_matrix:
    """D x D matrix with round(density * D^2) entries drawn from U[-1, 1]."""
    nnz = max(1, int(round(density * D * D)))
    flat = rng.choice(D * D, size=nnz, replace=False)
    rows, cols = np.divmod(flat, D)
    values = rng.uniform(-1.0, 1.0, size=nnz)
    return sparse.csr_matrix((values, (rows, cols)), shape=(D, D))


def spectral_radius(w: sparse.spmatrix, rng: np.random.Generator) -> float:
    """Largest eigenvalue modulus of a square sparse matrix."""
    D = w.shape[0]
    if D <= DENSE_EIG_MAX_D:
        return float(np.max(np.abs(np.linalg.eigvals(w.toarray()))))
    v0 = rng.uniform(-1.0, 1.0, size=D)
    try:
        values = splinalg.eigs(
            w, k=1, which="LM", tol=POWER_TOL, maxiter=POWER_MAXITER, v0=v0,
            return_eigenvectors=False,
        )
    except splinalg.ArpackNoConvergence as e:
        raise ConstructionError(f"spectral radius iteration did not converge: {e}") from e
    return float(np.abs(values[0]))


def build(cfg: EsnConfig) -> EsnModel:
    """Draw w_in and a; a is rescaled so its spectral radius equals beta2.

    Deterministic in cfg.seed. Draws with a zero or non-converging spectral
    radius are replaced, up to MAX_BUILD_RETRIES times.
    """
    rng = np.random.default_rng(cfg.seed)
    w_in = rng.uniform(-cfg.beta1, cfg.beta1, size=(cfg.D, cfg.N))

    if cfg.beta2 == 0:
        return EsnModel(cfg=cfg, w_in=w_in, a=sparse.csr_matrix((cfg.D, cfg.D)))

    last_error = "no attempt made"
    for _ in range(MAX_BUILD_RETRIES):
        w0 = sparse_uniform(cfg.D, cfg.density, rng)
        try:
            rho = spectral_radius(w0, rng)
        except ConstructionError as e:
            last_error = str(e)
            continue
        if rho > 1e-12:
            a = (w0 * (cfg.beta2 / rho)).tocsr()
            return EsnModel(cfg=cfg, w_in=w_in, a=a)
        last_error = f"degenerate draw with spectral radius {rho:.3e}"
    raise ConstructionError(f"could not build adjacency after {MAX_BUILD_RETRIES} draws: {last_error}")


def readout_transform(r: np.ndarray) -> np.ndarray:
    """Square the odd components (1-based) of r; even components pass through.

    Works on a single state or on a D x T block of states (axis 0).
    """
    out = np.array(r, dtype=float, copy=True)
    out[0::2] = out[0::2] ** 2
    return out


def update_state(model: EsnModel, x: np.ndarray) -> np.ndarray:
    """r <- tanh(A r + W_in x); returns the new state."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.cfg.N,):
        raise DimensionError(f"input has shape {x.shape}, expected ({model.cfg.N},)")
    model.r = np.tanh(model.a @ model.r + model.w_in @ x)
    return model.r


def _columns(X: Union[np.ndarray, Trajectory], N: int) -> np.ndarray:
    if isinstance(X, Trajectory):
        X = X.columns
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != N:
        raise DimensionError(f"expected an {N} x T matrix, got shape {X.shape}")
    if X.shape[1] < 1:
        raise DimensionError("need at least one column")
    return X


def _iter_pairs(
    model: EsnModel,
    X: np.ndarray,
    reset_markers: Iterable[int],
    chunk: int,
) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yield (R, X) blocks of at most ``chunk`` aligned pairs.

    The state driven by column t is paired with column t + 1, except when t + 1
    starts a new trajectory. The state carries over such boundaries unless
    ``reset_on_concat`` is set.
    """
    starts = {int(m) for m in reset_markers}
    T = X.shape[1]
    D, N = model.cfg.D, model.cfg.N
    model.reset()

    R_block = np.empty((D, chunk))
    X_block = np.empty((N, chunk))
    filled = 0
    for t in range(T - 1):
        if t > 0 and t in starts and model.cfg.reset_on_concat:
            model.reset()
        r = update_state(model, X[:, t])
        if (t + 1) in starts:
            continue
        R_block[:, filled] = readout_transform(r)
        X_block[:, filled] = X[:, t + 1]
        filled += 1
        if filled == chunk:
            yield R_block, X_block
            R_block = np.empty((D, chunk))
            X_block = np.empty((N, chunk))
            filled = 0
    if filled:
        yield R_block[:, :filled], X_block[:, :filled]


def drive(
    model: EsnModel,
    X: Union[np.ndarray, Trajectory],
    reset_markers: Sequence[int] = (),
) -> StateMatrixPair:
    """Drive the reservoir from r = 0 with the columns of X and collect pairs.

    ``reset_markers`` are the column indices where concatenated trajectories
    start.
    """
    X = _columns(X, model.cfg.N)
    blocks = list(_iter_pairs(model, X, reset_markers, chunk=max(1, X.shape[1])))
    if not blocks:
        return StateMatrixPair(R=np.empty((model.cfg.D, 0)), X=np.empty((model.cfg.N, 0)))
    return StateMatrixPair(R=np.hstack([b[0] for b in blocks]), X=np.hstack([b[1] for b in blocks]))


def drive_gram(
    model: EsnModel,
    X: Union[np.ndarray, Trajectory],
    reset_markers: Sequence[int] = (),
    chunk: int = GRAM_CHUNK,
) -> Gram:
    """Like drive, but accumulates RR' and RX' instead of storing R."""
    X = _columns(X, model.cfg.N)
    gram = Gram.zeros(model.cfg.D, model.cfg.N)
    for R_block, X_block in _iter_pairs(model, X, reset_markers, chunk=chunk):
        gram.add(R_block, X_block)
    return gram


def warmup(model: EsnModel, snippet: Union[np.ndarray, Trajectory]) -> np.ndarray:
    """Feed the columns of a true snippet through the reservoir, nothing recorded."""
    X = _columns(snippet, model.cfg.N)
    for t in range(X.shape[1]):
        update_state(model, X[:, t])
    return model.r


def predict(
    model: EsnModel,
    x0: np.ndarray,
    steps: int,
    sample_dt: float = 0.1,
    t0: float = 0.0,
    reset: bool = True,
) -> Trajectory:
    """Closed-loop forecast: x <- W_out r~(update(x)), starting from x0.

    The reservoir starts from zero unless ``reset`` is False (after warmup).
    Returns steps + 1 snapshots including x0.
    """
    if model.w_out is None:
        raise UntrainedModelError("model has no readout; train it first")
    x = np.asarray(x0, dtype=float)
    if x.shape != (model.cfg.N,):
        raise DimensionError(f"x0 has shape {x.shape}, expected ({model.cfg.N},)")
    if reset:
        model.reset()

    states = np.empty((steps + 1, model.cfg.N))
    states[0] = x
    for k in range(1, steps + 1):
        r = update_state(model, x)
        x = model.w_out @ readout_transform(r)
        states[k] = x
    times = t0 + np.arange(steps + 1) * sample_dt
    return Trajectory(times=times, states=states, sample_dt=sample_dt)


def effective_lambda(cfg: EsnConfig, gram: Optional[Gram]) -> float:
    """Ridge penalty actually used: absolute, or scaled by trace(RR')/D."""
    if not cfg.lambda_relative or gram is None:
        return cfg.lambda_
    return cfg.lambda_ * float(np.trace(gram.rr)) / cfg.D
