"""simulate command: one DNS trajectory written to CSV."""

from pathlib import Path
from typing import Optional

from datagen.build import SimulationJob, run_job
from datagen.types import IcParams
from swe_core.io import write_trajectory_csv

from .config import ExperimentConfig
from .io import simulate_path


def make_ic(
    h_mean: float,
    u_mean: float,
    a: float = 0.0,
    d: float = 0.0,
    k: int = 1,
    p: int = 1,
    omega1: float = 0.0,
    omega2: float = 0.0,
) -> IcParams:
    """Explicit initial condition around the given mean level and velocity."""
    return IcParams(h0=h_mean, u0=u_mean, s_h=0.0, s_u=0.0, a=a, d=d, k=k, p=p, omega1=omega1, omega2=omega2)


def cmd_simulate(
    config: ExperimentConfig,
    ic: IcParams,
    t_end: Optional[float] = None,
    name: str = "trajectory",
) -> Path:
    """Integrate one IC over [0, t_end] and write the trajectory CSV."""
    t_end = config.test_t_end if t_end is None else t_end
    print(
        f"Simulating n={config.swe.n} cells, t in [0, {t_end}], "
        f"h0={ic['h0']}, u0={ic['u0']}, a={ic['a']}, d={ic['d']}"
    )
    traj = run_job(SimulationJob(ic, config.swe, t_end, config.sample_dt))
    path = simulate_path(config, name)
    write_trajectory_csv(path, traj, config.swe, tags={"config_hash": config.config_hash()})
    print(f"Written: {path} ({len(traj)} snapshots)")
    return path
