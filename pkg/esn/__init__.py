"""Echo-state network surrogate with ridge readout and transfer correction."""

from .io import load_model, save_model
from .readout import (
    SKIP_TRANSFER,
    ridge_gradient,
    ridge_objective,
    train,
    training_residual,
    transfer_limit,
    transfer_objective,
    transfer_update,
)
from .reservoir import (
    build,
    drive,
    drive_gram,
    effective_lambda,
    predict,
    readout_transform,
    spectral_radius,
    update_state,
    warmup,
)
from .types import EsnConfig, EsnModel, Gram, StateMatrixPair

__all__ = [
    "SKIP_TRANSFER",
    "EsnConfig",
    "EsnModel",
    "Gram",
    "StateMatrixPair",
    "build",
    "drive",
    "drive_gram",
    "effective_lambda",
    "load_model",
    "predict",
    "readout_transform",
    "ridge_gradient",
    "ridge_objective",
    "save_model",
    "spectral_radius",
    "train",
    "training_residual",
    "transfer_limit",
    "transfer_objective",
    "transfer_update",
    "update_state",
    "warmup",
]
