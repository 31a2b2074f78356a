"""Trajectory CSV export and import.

Layout: a ``#`` metadata line (n, dx, L, sample_dt and any extra tags), a
column-name row, then one row per snapshot: t, n values of h, n values of hu.
Values are written with 17 significant digits so a read restores them exactly.
"""

from pathlib import Path
from typing import Dict, Optional

import numpy as np

from workflow.errors import ArtifactError

from .types import SweConfig, Trajectory

FLOAT_FMT = "%.17g"


def _meta_line(meta: Dict[str, object]) -> str:
    return " ".join(f"{key}={value}" for key, value in meta.items())


def _parse_meta(line: str) -> Dict[str, str]:
    meta = {}
    for token in line.lstrip("#").split():
        if "=" in token:
            key, value = token.split("=", 1)
            meta[key] = value
    return meta


def write_trajectory_csv(
    path: Path,
    traj: Trajectory,
    cfg: SweConfig,
    tags: Optional[Dict[str, object]] = None,
) -> None:
    """Write a trajectory, creating parent dirs if needed."""
    path.parent.mkdir(parents=True, exist_ok=True)
    n = traj.n
    meta: Dict[str, object] = {
        "n": n,
        "dx": repr(cfg.dx),
        "L": repr(cfg.L),
        "sample_dt": repr(traj.sample_dt),
    }
    meta.update(tags or {})
    columns = ["t"] + [f"h_{j}" for j in range(n)] + [f"hu_{j}" for j in range(n)]
    header = _meta_line(meta) + "\n" + ",".join(columns)
    table = np.column_stack([traj.times, traj.states])
    np.savetxt(path, table, fmt=FLOAT_FMT, delimiter=",", header=header, comments="# ")


def read_trajectory_csv(path: Path) -> Trajectory:
    """Inverse of write_trajectory_csv."""
    if not path.exists():
        raise ArtifactError(f"trajectory file not found: {path}")
    with open(path) as f:
        meta = _parse_meta(f.readline())
    try:
        table = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
        n = int(meta["n"])
        sample_dt = float(meta["sample_dt"])
    except (KeyError, ValueError) as e:
        raise ArtifactError(f"unreadable trajectory file {path}: {e}") from e
    if table.shape[1] != 2 * n + 1:
        raise ArtifactError(f"{path}: expected {2 * n + 1} columns, found {table.shape[1]}")
    return Trajectory(times=table[:, 0], states=table[:, 1:], sample_dt=sample_dt, meta=meta)
