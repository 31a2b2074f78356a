"""bench command: wall-clock of DNS against ESN prediction over the same horizon."""

import time
from pathlib import Path
from typing import Optional

import numpy as np

from datagen.build import SimulationJob, run_job, suite_params
from datagen.sampling import is_reference
from esn.io import load_model
from esn.readout import transfer_update
from esn.reservoir import build, predict
from esn.types import EsnModel
from swe_core.simulate import ratio_to_int

from .config import ExperimentConfig
from .io import bench_path, model_path, write_json
from .transfer import transfer_set_pairs
from .types import BenchReport

DEFAULT_BENCH_SUITE = "TEST_4"


def _load_or_stub(config: ExperimentConfig, model_file: Optional[Path]) -> EsnModel:
    """The trained model, or a zero readout of the same shape when none exists yet."""
    path = model_file or model_path(config)
    if path.exists():
        model, _ = load_model(path)
        if model.w_out is not None:
            return model
    print(f"No trained model at {path}; timing with a zero readout")
    model = build(config.esn)
    return model.with_readout(np.zeros((config.esn.N, config.esn.D)))


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else float("inf")


async def cmd_bench(
    config: ExperimentConfig,
    model_file: Optional[Path] = None,
    suite_name: str = DEFAULT_BENCH_SUITE,
) -> Path:
    """Time one DNS trajectory, one ESN forecast and, for a shifted suite, the transfer phase."""
    suite = config.suite_spec(suite_name)
    model = _load_or_stub(config, model_file)
    t_end = config.test_t_end
    ic = suite_params(suite, config.seed, config.suite_index(suite_name))[0]

    dns_steps = ratio_to_int(t_end, config.swe.dt_fine, "test_t_end")
    esn_steps = ratio_to_int(t_end, config.sample_dt, "test_t_end")
    print(f"DNS: {dns_steps} fine steps; ESN: {esn_steps} steps ({suite_name}, t in [0, {t_end}])")

    start = time.perf_counter()
    truth = run_job(SimulationJob(ic, config.swe, t_end, config.sample_dt))
    dns_seconds = time.perf_counter() - start

    start = time.perf_counter()
    predict(model, truth.states[0], esn_steps, sample_dt=config.sample_dt)
    esn_seconds = time.perf_counter() - start

    transfer_suite: Optional[str] = None
    transfer_dns_seconds = 0.0
    transfer_update_seconds = 0.0
    if not is_reference(suite["h_mean"], suite["u_mean"]):
        transfer_suite = suite_name
        start = time.perf_counter()
        pair = await transfer_set_pairs(config, model, suite)
        transfer_dns_seconds = time.perf_counter() - start
        start = time.perf_counter()
        transfer_update(model, pair, config.alpha)
        transfer_update_seconds = time.perf_counter() - start

    with_transfer = esn_seconds + transfer_dns_seconds + transfer_update_seconds
    report = BenchReport(
        config_hash=config.config_hash(),
        t_end=t_end,
        dns_steps=dns_steps,
        esn_steps=esn_steps,
        step_ratio=dns_steps / esn_steps,
        dns_seconds=dns_seconds,
        esn_predict_seconds=esn_seconds,
        transfer_suite=transfer_suite,
        transfer_dns_seconds=transfer_dns_seconds,
        transfer_update_seconds=transfer_update_seconds,
        speedup_predict_only=_ratio(dns_seconds, esn_seconds),
        speedup_with_transfer=_ratio(dns_seconds, with_transfer),
    )
    path = bench_path(config)
    write_json(path, report)
    print(f"DNS {dns_seconds:.2f}s, ESN predict {esn_seconds:.2f}s, transfer {transfer_dns_seconds:.2f}s + {transfer_update_seconds:.2f}s")
    print(f"Speedup: {report['speedup_predict_only']:.1f}x predict only, {report['speedup_with_transfer']:.1f}x with transfer")
    print(f"Written: {path}")
    return path
