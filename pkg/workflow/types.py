"""TypedDict definitions for harness reports and manifests."""

from typing import List, Optional

from typing_extensions import TypedDict


class TrainReport(TypedDict):
    """Written next to the trained model as train.json."""

    config_hash: str
    model: str
    seed: int
    trajectories: int
    pairs: int
    boundaries: List[int]  # column offset of each training trajectory
    lambda_effective: float
    residual: float  # relative one-step in-sample residual
    residual_threshold: float
    residual_ok: bool


class TransferRecord(TypedDict):
    """Written next to a transferred model."""

    config_hash: str
    suite: str
    alpha: str  # "inf" for the no-transfer branch
    pairs: int
    delta_norm: float  # Frobenius norm of the readout correction
    model: str


class BranchSummary(TypedDict):
    """Time-averaged errors of one (suite, alpha) branch."""

    alpha: str
    mean_h: float
    mean_hu: float
    mean_u: float
    curve: str  # path of the error CSV


class SuiteSummary(TypedDict):
    config_hash: str
    suite: str
    h_mean: float
    u_mean: float
    trajectories: int
    branches: List[BranchSummary]
    snapshots: Optional[str]
    train_residual: Optional[float]  # from train.json next to the model, if present


class BenchReport(TypedDict):
    """Wall-clock timings; transfer phases are itemized so either accounting can be read off."""

    config_hash: str
    t_end: float
    dns_steps: int
    esn_steps: int
    step_ratio: float
    dns_seconds: float
    esn_predict_seconds: float
    transfer_suite: Optional[str]
    transfer_dns_seconds: float
    transfer_update_seconds: float
    speedup_predict_only: float
    speedup_with_transfer: float
