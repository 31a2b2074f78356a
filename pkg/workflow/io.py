"""File I/O helpers and run-directory layout.

    <output_dir>/
        dataset/            training trajectories + manifest.json (gen-data)
        model.zip, train.json
        transfer/           model_<suite>_alpha_<alpha>.zip + .json
        evaluate/           errors_<suite>_alpha_<alpha>.csv, summary_<suite>.json,
                            snapshots_<suite>.csv
        simulate/           <name>.csv
        bench.json
"""

import json
from pathlib import Path
from typing import Any, Optional

from datagen.build import alpha_label

from .config import ExperimentConfig


def ensure_dir(path: Path) -> None:
    """Create directory and parents if needed."""
    path.mkdir(parents=True, exist_ok=True)


def read_json(path: Path) -> Optional[Any]:
    """Return None if file doesn't exist or is invalid."""
    try:
        if not path.exists():
            return None
        return json.loads(path.read_text())
    except (json.JSONDecodeError, OSError):
        return None


def write_json(path: Path, data: Any) -> None:
    """Create parent dirs if needed; keys sorted so reruns give identical files."""
    ensure_dir(path.parent)
    path.write_text(json.dumps(data, indent=2, sort_keys=True))


def dataset_dir(config: ExperimentConfig) -> Path:
    return config.output_dir / "dataset"


def model_path(config: ExperimentConfig) -> Path:
    return config.output_dir / "model.zip"


def train_report_path(config: ExperimentConfig) -> Path:
    return config.output_dir / "train.json"


def transfer_model_path(config: ExperimentConfig, suite: str, alpha: float) -> Path:
    return config.output_dir / "transfer" / f"model_{suite}_alpha_{alpha_label(alpha)}.zip"


def evaluate_dir(config: ExperimentConfig) -> Path:
    return config.output_dir / "evaluate"


def simulate_path(config: ExperimentConfig, name: str) -> Path:
    return config.output_dir / "simulate" / f"{name}.csv"


def bench_path(config: ExperimentConfig) -> Path:
    return config.output_dir / "bench.json"
