"""gen-data command: simulate the training trajectories and write them to disk."""

from pathlib import Path

from datagen.build import build_training_set
from datagen.io import read_manifest, read_training_set, write_training_set
from datagen.types import TrainingSet

from .config import ExperimentConfig
from .io import dataset_dir


async def generate_training_set(config: ExperimentConfig) -> TrainingSet:
    print(
        f"Simulating {config.M} training trajectories "
        f"(t in [0, {config.train_t_end}], k <= {config.train_k_max}, workers={config.workers})"
    )
    return await build_training_set(
        config.M,
        config.swe,
        config.esn,
        config.seed,
        t_end=config.train_t_end,
        sample_dt=config.sample_dt,
        k_max=config.train_k_max,
        workers=config.workers,
    )


async def load_training_set(config: ExperimentConfig) -> TrainingSet:
    """Reuse a dataset written under the same config hash, else simulate a new one."""
    directory = dataset_dir(config)
    manifest = read_manifest(directory)
    if manifest is not None and manifest.get("tags", {}).get("config_hash") == config.config_hash():
        print(f"Reusing dataset: {directory}")
        return read_training_set(directory)
    return await generate_training_set(config)


async def cmd_gen_data(config: ExperimentConfig) -> Path:
    """Write traj_XXXX.csv files plus manifest.json; returns the manifest path."""
    training = await generate_training_set(config)
    tags = {"config_hash": config.config_hash(), "seed": config.seed}
    path = write_training_set(dataset_dir(config), training, config.swe, tags=tags)
    print(f"Written: {path} ({len(training.records)} trajectories, {training.X.shape[1]} columns)")
    return path
