"""Plot-ready CSVs: error curves, one file per (suite, alpha), and snapshot comparisons."""

import csv
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np

from datagen.build import alpha_label, parse_alpha
from swe_core.types import Trajectory
from workflow.errors import AlignmentError, ArtifactError

from .errors import ErrorCurve, channel_block

FIELDS = ["t", "e_h", "e_hu", "e_u", "suite", "alpha"]


def curve_filename(suite: str, alpha: float) -> str:
    return f"errors_{suite}_alpha_{alpha_label(alpha)}.csv"


def write_error_curve_csv(path: Path, curve: ErrorCurve, config_hash: Optional[str] = None) -> None:
    """Write t, e_h, e_hu, e_u, suite, alpha rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if config_hash:
            f.write(f"# config_hash={config_hash}\n")
        writer = csv.writer(f)
        writer.writerow(FIELDS)
        label = alpha_label(curve.alpha)
        for i, t in enumerate(curve.times):
            writer.writerow(
                [repr(float(t)), repr(float(curve.e_h[i])), repr(float(curve.e_hu[i])),
                 repr(float(curve.e_u[i])), curve.suite, label]
            )


def read_error_curve_csv(path: Path) -> ErrorCurve:
    """Inverse of write_error_curve_csv."""
    if not path.exists():
        raise ArtifactError(f"error curve not found: {path}")
    with open(path, newline="") as f:
        rows = [row for row in csv.reader(line for line in f if not line.startswith("#"))]
    if not rows or rows[0] != FIELDS:
        raise ArtifactError(f"{path}: unexpected header {rows[0] if rows else None}")
    body = rows[1:]
    if not body:
        raise ArtifactError(f"{path}: no rows")
    numbers = np.array([[float(v) for v in row[:4]] for row in body])
    return ErrorCurve(
        times=numbers[:, 0],
        e_h=numbers[:, 1],
        e_hu=numbers[:, 2],
        e_u=numbers[:, 3],
        suite=body[0][4],
        alpha=parse_alpha(body[0][5]),
    )


def write_snapshot_csv(
    path: Path,
    truth: Trajectory,
    predictions: Dict[float, Trajectory],
    times: Sequence[float],
    x: np.ndarray,
    z: np.ndarray,
    config_hash: Optional[str] = None,
) -> None:
    """One row per (t, cell): true and predicted h + z, hu and u for every alpha."""
    indices = []
    for t in times:
        k = int(round((t - truth.times[0]) / truth.sample_dt))
        if not 0 <= k < len(truth) or abs(truth.times[k] - t) > 1e-9:
            raise AlignmentError(f"snapshot time {t} is not on the sampled grid [0, {truth.times[-1]}]")
        indices.append(k)

    labels = [alpha_label(alpha) for alpha in predictions]
    header = ["t", "x", "z", "h_true", "hu_true", "u_true"]
    for label in labels:
        header += [f"h_alpha_{label}", f"hu_alpha_{label}", f"u_alpha_{label}"]

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if config_hash:
            f.write(f"# config_hash={config_hash}\n")
        writer = csv.writer(f)
        writer.writerow(header)
        channels = []
        for traj in [truth, *predictions.values()]:
            channels += [channel_block(traj, "h", z), channel_block(traj, "hu"), channel_block(traj, "u")]
        for k in indices:
            columns = [block[k] for block in channels]
            for j in range(len(x)):
                row = [repr(float(truth.times[k])), repr(float(x[j])), repr(float(z[j]))]
                row += [repr(float(c[j])) for c in columns]
                writer.writerow(row)
