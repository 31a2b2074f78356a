"""evaluate command: error curves per (suite, alpha) against fresh DNS truth.

Predictions always start from r = 0 and x(0) of the true trajectory; the true
trajectories are never fed to the reservoir.
"""

from pathlib import Path
from typing import List, Optional, Sequence

from datagen.build import alpha_label, build_test_suite
from datagen.types import TestSuiteSpec
from esn.io import load_model
from esn.types import EsnModel
from metrics.errors import suite_error_curve, time_average
from metrics.io import curve_filename, write_error_curve_csv, write_snapshot_csv
from swe_core.topography import make_topography

from .config import ExperimentConfig
from .errors import UntrainedModelError
from .io import evaluate_dir, read_json, train_report_path, write_json
from .transfer import transferred_models
from .types import BranchSummary, SuiteSummary


async def evaluate_suite(
    config: ExperimentConfig,
    model: EsnModel,
    suite: TestSuiteSpec,
    snapshot_times: Sequence[float] = (),
    train_residual: Optional[float] = None,
) -> SuiteSummary:
    """Run every alpha branch of one suite and write its CSVs and summary."""
    name = suite["name"]
    labels = ", ".join(alpha_label(a) for a in suite["alpha_values"])
    print(f"{name}: h_mean={suite['h_mean']}, u_mean={suite['u_mean']}, J={suite['J']}, alpha in [{labels}]")

    models = await transferred_models(config, model, suite)
    run = await build_test_suite(
        suite,
        models,
        config.swe,
        config.seed,
        config.suite_index(name),
        t_end=config.test_t_end,
        sample_dt=config.sample_dt,
        workers=config.workers,
    )

    z = make_topography(config.swe).z
    out_dir = evaluate_dir(config)
    config_hash = config.config_hash()
    branches: List[BranchSummary] = []
    for alpha in suite["alpha_values"]:
        curve = suite_error_curve(run.truth, run.predictions[alpha], name, alpha, z)
        path = out_dir / curve_filename(name, alpha)
        write_error_curve_csv(path, curve, config_hash)
        means = time_average(curve)
        branches.append(
            BranchSummary(
                alpha=alpha_label(alpha),
                mean_h=means["h"],
                mean_hu=means["hu"],
                mean_u=means["u"],
                curve=str(path),
            )
        )
        print(f"  alpha={alpha_label(alpha)}: mean E_h={means['h']:.4e}, mean E_hu={means['hu']:.4e}")
        print(f"Written: {path}")

    snapshots: Optional[str] = None
    if snapshot_times:
        path = out_dir / f"snapshots_{name}.csv"
        predictions = {alpha: trajs[0] for alpha, trajs in run.predictions.items()}
        write_snapshot_csv(path, run.truth[0], predictions, snapshot_times, config.swe.x, z, config_hash)
        snapshots = str(path)
        print(f"Written: {path}")

    summary = SuiteSummary(
        config_hash=config_hash,
        suite=name,
        h_mean=suite["h_mean"],
        u_mean=suite["u_mean"],
        trajectories=len(run.truth),
        branches=branches,
        snapshots=snapshots,
        train_residual=train_residual,
    )
    write_json(out_dir / f"summary_{name}.json", summary)
    return summary


async def cmd_evaluate(
    config: ExperimentConfig,
    model_file: Path,
    suite_names: Optional[Sequence[str]] = None,
    snapshot_times: Sequence[float] = (),
) -> List[SuiteSummary]:
    """Evaluate the named suites (default: the config's selection, else all nine)."""
    model, _ = load_model(model_file)
    if model.w_out is None:
        raise UntrainedModelError(f"{model_file} has no readout; run train first")
    report = read_json(model_file.with_name(train_report_path(config).name))
    train_residual = report["residual"] if report else None
    if train_residual is None:
        print(f"No training report next to {model_file}; summaries omit the training residual")
    suites = [config.suite_spec(n) for n in suite_names] if suite_names else config.suite_specs()
    print(f"Evaluating {len(suites)} suites over t in [0, {config.test_t_end}]")
    return [await evaluate_suite(config, model, suite, snapshot_times, train_residual) for suite in suites]
