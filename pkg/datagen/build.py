"""Training set, test suite and transfer set generation.

Every trajectory draws its initial condition from its own seeded stream, so a
dataset depends only on (seed, specs, config) and trajectories can be
simulated in any order or in parallel. Results are always ordered by index.
"""

import asyncio
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List

from esn.reservoir import drive, predict
from esn.types import EsnConfig, EsnModel, StateMatrixPair
from swe_core.simulate import integrate, ratio_to_int
from swe_core.topography import make_topography
from swe_core.types import SweConfig, Trajectory
from workflow.errors import ConfigError, DimensionError, TransferRefusedError

from .sampling import (
    TRAIN_K_MAX,
    TEST_STREAM,
    TRAIN_STREAM,
    TRANSFER_STREAM,
    is_reference,
    realize_ic,
    sample_testing_ic,
    sample_training_ic,
    trajectory_rng,
)
from .types import IcParams, SuiteRun, TestSuiteSpec, TrainingSet, TrajectoryRecord

TRAIN_T_END = 30.0
TEST_T_END = 60.0
TRANSFER_T_END = 2.0
SAMPLE_DT = 0.1


@dataclass(frozen=True)
class SimulationJob:
    """Everything one worker needs to produce one trajectory."""

    params: IcParams
    cfg: SweConfig
    t_end: float
    sample_dt: float


def run_job(job: SimulationJob) -> Trajectory:
    """Realize the IC and integrate it (top-level so it pickles)."""
    topo = make_topography(job.cfg)
    state = realize_ic(job.params, job.cfg, topo)
    traj = integrate(state, job.cfg, job.t_end, job.sample_dt, topo)
    traj.meta = {"params": dict(job.params)}
    return traj


async def run_simulations(jobs: List[SimulationJob], workers: int = 1) -> List[Trajectory]:
    """Run jobs, in a process pool when workers > 1; output follows job order."""
    if workers <= 1:
        return [run_job(job) for job in jobs]

    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:

        async def run_one(job: SimulationJob) -> Trajectory:
            async with semaphore:
                return await loop.run_in_executor(pool, run_job, job)

        return list(await asyncio.gather(*(run_one(job) for job in jobs)))


async def build_training_set(
    M: int,
    cfg: SweConfig,
    esn_cfg: EsnConfig,
    seed: int,
    t_end: float = TRAIN_T_END,
    sample_dt: float = SAMPLE_DT,
    k_max: int = TRAIN_K_MAX,
    workers: int = 1,
) -> TrainingSet:
    """Simulate M training trajectories and record their column offsets."""
    if M < 1:
        raise ConfigError(f"M must be at least 1, got {M}")
    if esn_cfg.N != 2 * cfg.n:
        raise DimensionError(f"esn N={esn_cfg.N} but the grid gives 2n={2 * cfg.n}")

    jobs, keys = [], []
    for i in range(M):
        rng, key = trajectory_rng(seed, TRAIN_STREAM, i)
        jobs.append(SimulationJob(sample_training_ic(rng, k_max), cfg, t_end, sample_dt))
        keys.append(key)

    trajectories = await run_simulations(jobs, workers)

    records: List[TrajectoryRecord] = []
    offset = 0
    for i, (job, key, traj) in enumerate(zip(jobs, keys, trajectories)):
        records.append(
            TrajectoryRecord(
                index=i, seed=seed, spawn_key=key, offset=offset, snapshots=len(traj), params=job.params
            )
        )
        offset += len(traj)
    return TrainingSet(trajectories=trajectories, records=records)


def suite_params(suite: TestSuiteSpec, seed: int, suite_index: int) -> List[IcParams]:
    """The J initial conditions of a suite (shared by every alpha branch)."""
    params = []
    for i in range(suite["J"]):
        rng, _ = trajectory_rng(seed, TEST_STREAM, suite_index, i)
        params.append(sample_testing_ic(rng, suite))
    return params


async def build_test_suite(
    suite: TestSuiteSpec,
    models: Dict[float, EsnModel],
    cfg: SweConfig,
    seed: int,
    suite_index: int,
    t_end: float = TEST_T_END,
    sample_dt: float = SAMPLE_DT,
    workers: int = 1,
) -> SuiteRun:
    """True DNS trajectories plus one prediction per model, from the same ICs.

    ``models`` maps each alpha to its readout; every model starts from r = 0.
    """
    params = suite_params(suite, seed, suite_index)
    jobs = [SimulationJob(p, cfg, t_end, sample_dt) for p in params]
    truth = await run_simulations(jobs, workers)

    steps = ratio_to_int(t_end, sample_dt, "t_end")
    predictions: Dict[float, List[Trajectory]] = {}
    for alpha, model in models.items():
        predictions[alpha] = [
            predict(model, traj.states[0], steps, sample_dt=sample_dt) for traj in truth
        ]
    return SuiteRun(suite=suite, params=params, truth=truth, predictions=predictions)


async def build_transfer_set(
    suite: TestSuiteSpec,
    cfg: SweConfig,
    seed: int,
    suite_index: int,
    t_end: float = TRANSFER_T_END,
    sample_dt: float = SAMPLE_DT,
) -> Trajectory:
    """A single short DNS trajectory in the suite's ambient regime."""
    if is_reference(suite["h_mean"], suite["u_mean"]):
        raise TransferRefusedError(f"{suite['name']} has the training regime's means; no transfer")
    rng, _ = trajectory_rng(seed, TRANSFER_STREAM, suite_index)
    job = SimulationJob(sample_testing_ic(rng, suite), cfg, t_end, sample_dt)
    return run_job(job)


def transfer_pairs(model: EsnModel, traj: Trajectory) -> StateMatrixPair:
    """Drive a model with the transfer trajectory: T snapshots -> T - 1 pairs."""
    return drive(model, traj)


def alpha_label(alpha: float) -> str:
    """File-name friendly alpha: 'inf' for the no-transfer branch."""
    return "inf" if math.isinf(alpha) else repr(float(alpha))


def parse_alpha(text: str) -> float:
    text = text.strip().lower()
    if text in ("inf", "infinity", "none", "skip"):
        return math.inf
    return float(text)

