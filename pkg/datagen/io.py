"""Dataset directories: one trajectory CSV per IC plus manifest.json."""

import json
from pathlib import Path
from typing import Any, Dict, Optional

from swe_core.io import read_trajectory_csv, write_trajectory_csv
from swe_core.types import SweConfig
from workflow.errors import ArtifactError

from .types import TrainingSet

MANIFEST_NAME = "manifest.json"


def trajectory_filename(index: int) -> str:
    return f"traj_{index:04d}.csv"


def write_training_set(
    directory: Path,
    training: TrainingSet,
    cfg: SweConfig,
    tags: Optional[Dict[str, Any]] = None,
) -> Path:
    """Write trajectories and the manifest; returns the manifest path."""
    directory.mkdir(parents=True, exist_ok=True)
    for record, traj in zip(training.records, training.trajectories):
        write_trajectory_csv(
            directory / trajectory_filename(record["index"]), traj, cfg, tags={"index": record["index"]}
        )
    manifest = {
        "tags": tags or {},
        "swe": cfg.as_dict(),
        "trajectories": len(training.records),
        "columns": sum(r["snapshots"] for r in training.records),
        "boundaries": training.boundaries,
        "records": training.records,
    }
    path = directory / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2))
    return path


def read_manifest(directory: Path) -> Optional[dict]:
    """Return None if the manifest doesn't exist."""
    path = directory / MANIFEST_NAME
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ArtifactError(f"corrupt manifest {path}: {e}") from e


def read_training_set(directory: Path) -> TrainingSet:
    """Load a dataset written by write_training_set."""
    manifest = read_manifest(directory)
    if manifest is None:
        raise ArtifactError(f"no {MANIFEST_NAME} in {directory}")
    records = manifest["records"]
    trajectories = [read_trajectory_csv(directory / trajectory_filename(r["index"])) for r in records]
    return TrainingSet(trajectories=trajectories, records=records)
