"""Normalized L2 prediction errors per channel, per trajectory and per suite."""

import math
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np

from swe_core.types import Trajectory
from workflow.errors import AlignmentError, ConfigError

Channel = Literal["h", "hu", "u"]
CHANNELS: Sequence[Channel] = ("h", "hu", "u")


@dataclass
class ErrorCurve:
    """Suite-averaged error E(t) for the h + z, hu and u channels."""

    times: np.ndarray
    e_h: np.ndarray
    e_hu: np.ndarray
    e_u: np.ndarray
    suite: str
    alpha: float

    def channel(self, name: Channel) -> np.ndarray:
        return {"h": self.e_h, "hu": self.e_hu, "u": self.e_u}[name]


def _check_aligned(true_traj: Trajectory, pred_traj: Trajectory) -> None:
    if true_traj.states.shape != pred_traj.states.shape:
        raise AlignmentError(
            f"trajectory shapes differ: {true_traj.states.shape} vs {pred_traj.states.shape}"
        )
    if not np.allclose(true_traj.times, pred_traj.times, rtol=0.0, atol=1e-9):
        raise AlignmentError("trajectories are sampled at different times")


def channel_block(traj: Trajectory, channel: Channel, z: Optional[np.ndarray] = None) -> np.ndarray:
    """T x n array for one channel; h is reported as h + z when z is given."""
    if channel == "h":
        return traj.h + z if z is not None else traj.h
    if channel == "hu":
        return traj.hu
    if channel == "u":
        return traj.hu / traj.h
    raise ConfigError(f"unknown channel {channel!r}")


def trajectory_error(
    true_traj: Trajectory,
    pred_traj: Trajectory,
    channel: Channel,
    z: Optional[np.ndarray] = None,
) -> np.ndarray:
    """e(t) = ||true(t) - pred(t)|| / <||true||>, mean taken over the whole window."""
    _check_aligned(true_traj, pred_traj)
    truth = channel_block(true_traj, channel, z)
    pred = channel_block(pred_traj, channel, z)
    scale = float(np.mean(np.linalg.norm(truth, axis=1)))
    if scale == 0.0:
        raise AlignmentError(f"true {channel} channel is zero over the whole window; normalized error undefined")
    return np.linalg.norm(truth - pred, axis=1) / scale


def suite_error(curves: List[np.ndarray]) -> np.ndarray:
    """Pointwise mean of per-trajectory error curves."""
    if not curves:
        raise AlignmentError("no error curves to average")
    lengths = {len(c) for c in curves}
    if len(lengths) != 1:
        raise AlignmentError(f"error curves have different lengths: {sorted(lengths)}")
    return np.mean(np.vstack(curves), axis=0)


def suite_error_curve(
    truth: List[Trajectory],
    predictions: List[Trajectory],
    suite: str,
    alpha: float,
    z: Optional[np.ndarray] = None,
) -> ErrorCurve:
    """ErrorCurve of one (suite, alpha) branch from paired trajectories."""
    if len(truth) != len(predictions):
        raise AlignmentError(f"{len(truth)} true trajectories but {len(predictions)} predictions")
    per_channel: Dict[str, np.ndarray] = {}
    for channel in CHANNELS:
        per_channel[channel] = suite_error(
            [trajectory_error(t, p, channel, z) for t, p in zip(truth, predictions)]
        )
    return ErrorCurve(
        times=truth[0].times.copy(),
        e_h=per_channel["h"],
        e_hu=per_channel["hu"],
        e_u=per_channel["u"],
        suite=suite,
        alpha=alpha,
    )


def time_average(curve: ErrorCurve) -> Dict[str, float]:
    """Mean of each channel over the prediction window."""
    return {channel: float(np.mean(curve.channel(channel))) for channel in CHANNELS}


def suite_ratio(numerator: ErrorCurve, denominator: ErrorCurve, channel: Channel = "h") -> float:
    """Ratio of time-averaged errors of two suites for one channel."""
    bottom = time_average(denominator)[channel]
    if bottom == 0:
        return math.inf
    return time_average(numerator)[channel] / bottom
