"""transfer command: correct a trained readout for a shifted suite."""

import math
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from datagen.build import alpha_label, build_transfer_set, transfer_pairs
from datagen.types import TestSuiteSpec
from esn.io import load_model, save_model
from esn.readout import transfer_limit, transfer_update
from esn.types import EsnModel, StateMatrixPair

from .config import ExperimentConfig
from .errors import RankDeficiencyError, UntrainedModelError
from .io import transfer_model_path, write_json
from .types import TransferRecord


async def transfer_set_pairs(config: ExperimentConfig, model: EsnModel, suite: TestSuiteSpec) -> StateMatrixPair:
    """Simulate the suite's short transfer trajectory and drive the model with it."""
    traj = await build_transfer_set(
        suite,
        config.swe,
        config.seed,
        config.suite_index(suite["name"]),
        t_end=config.transfer_t_end,
        sample_dt=config.sample_dt,
    )
    return transfer_pairs(model, traj)


def _corrected(model: EsnModel, pair: StateMatrixPair, alpha: float) -> EsnModel:
    try:
        _, corrected = transfer_update(model, pair, alpha)
    except RankDeficiencyError:
        if alpha != 0:
            raise
        # Fewer transfer pairs than reservoir nodes: use the alpha -> 0+ limit.
        print(f"  alpha=0: {pair.count} pairs for D={model.cfg.D}, using the minimum-norm correction")
        _, corrected = transfer_limit(model, pair)
    return corrected


async def transferred_models(config: ExperimentConfig, model: EsnModel, suite: TestSuiteSpec) -> Dict[float, EsnModel]:
    """One readout per alpha branch of the suite; the transfer set is simulated once."""
    if model.w_out is None:
        raise UntrainedModelError("transfer needs a trained readout")
    models: Dict[float, EsnModel] = {}
    pair: Optional[StateMatrixPair] = None
    for alpha in suite["alpha_values"]:
        if math.isinf(alpha):
            models[alpha] = model.with_readout(model.w_out)
            continue
        if pair is None:
            pair = await transfer_set_pairs(config, model, suite)
        models[alpha] = _corrected(model, pair, alpha)
    return models


async def cmd_transfer(
    config: ExperimentConfig,
    model_file: Path,
    suite_name: str,
    alpha: Optional[float] = None,
) -> Path:
    """Apply the transfer correction for one suite and save the corrected model.

    alpha defaults to config.alpha; alpha = inf copies the readout unchanged.
    """
    alpha = config.alpha if alpha is None else alpha
    suite = config.suite_spec(suite_name)
    model, _ = load_model(model_file)
    if model.w_out is None:
        raise UntrainedModelError(f"{model_file} has no readout; run train first")

    if math.isinf(alpha):
        print(f"{suite_name}: alpha=inf, readout kept as is")
        pairs = 0
        delta = np.zeros_like(model.w_out)
        updated = model.with_readout(model.w_out)
    else:
        print(f"{suite_name}: simulating transfer set t in [0, {config.transfer_t_end}]")
        pair = await transfer_set_pairs(config, model, suite)
        pairs = pair.count
        updated = _corrected(model, pair, alpha)
        delta = updated.w_out - model.w_out

    path = transfer_model_path(config, suite_name, alpha)
    tags = {"config_hash": config.config_hash(), "suite": suite_name, "alpha": alpha_label(alpha)}
    save_model(path, updated, tags=tags)
    record = TransferRecord(
        config_hash=config.config_hash(),
        suite=suite_name,
        alpha=alpha_label(alpha),
        pairs=pairs,
        delta_norm=float(np.linalg.norm(delta)),
        model=str(path),
    )
    write_json(path.with_suffix(".json"), record)
    print(f"Written: {path} ({pairs} pairs, |dW|={record['delta_norm']:.3e})")
    return path
