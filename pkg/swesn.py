#!/usr/bin/env python
"""Shallow-water ESN surrogate CLI."""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from workflow.errors import ConfigError, SwesnError, exit_code_for


def parse_float_list(text: str) -> List[float]:
    """Comma-separated floats, e.g. '0,10,30'."""
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def add_experiment_flags(parser: argparse.ArgumentParser) -> None:
    """Flags mirroring ExperimentConfig; unset flags leave the config untouched."""
    parser.add_argument("--config", "-c", type=Path, help="key=value config file")
    parser.add_argument("--preset", choices=["paper", "full", "desk"], help="scale preset ('full' is an alias of 'paper')")
    parser.add_argument("--output-dir", "-o", type=Path)
    parser.add_argument("--workers", "-w", type=int)
    parser.add_argument("--seed", "-s", type=int)
    parser.add_argument("--D", type=int, help="reservoir size")
    parser.add_argument("--beta1", type=float, help="input weight scale")
    parser.add_argument("--beta2", type=float, help="spectral radius of the adjacency")
    parser.add_argument("--density", type=float, help="adjacency density")
    parser.add_argument("--lambda", dest="lambda_", type=float, help="ridge penalty")
    parser.add_argument("--alpha", type=str, help="transfer rate ('inf' skips transfer)")
    parser.add_argument("--M", type=int, help="training trajectories")
    parser.add_argument("--J", type=int, help="trajectories per test suite")


def overrides_from(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "preset": args.preset,
        "output_dir": args.output_dir,
        "workers": args.workers,
        "seed": args.seed,
        "D": args.D,
        "beta1": args.beta1,
        "beta2": args.beta2,
        "density": args.density,
        "lambda": args.lambda_,
        "M": args.M,
        "J": args.J,
    }


def run(argv: Optional[List[str]] = None) -> None:
    parser = argparse.ArgumentParser(description="Shallow-water DNS and echo-state network surrogate")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # simulate
    simulate = subparsers.add_parser("simulate", help="Run one DNS trajectory to CSV")
    add_experiment_flags(simulate)
    simulate.add_argument("--h0", type=float, default=4.0, help="mean water level h + z")
    simulate.add_argument("--u0", type=float, default=2.5, help="mean velocity")
    simulate.add_argument("--a", type=float, default=0.0, help="relative level perturbation")
    simulate.add_argument("--d", type=float, default=0.0, help="relative velocity perturbation")
    simulate.add_argument("--k", type=int, default=1)
    simulate.add_argument("--p", type=int, default=1)
    simulate.add_argument("--omega1", type=float, default=0.0)
    simulate.add_argument("--omega2", type=float, default=0.0)
    simulate.add_argument("--t-end", type=float)
    simulate.add_argument("--name", default="trajectory")

    # gen-data
    gen_data = subparsers.add_parser("gen-data", help="Simulate and write the training set")
    add_experiment_flags(gen_data)

    # train
    train = subparsers.add_parser("train", help="Fit the readout and save the model")
    add_experiment_flags(train)

    # transfer
    transfer = subparsers.add_parser("transfer", help="Transfer-correct a model for one suite")
    add_experiment_flags(transfer)
    transfer.add_argument("--model", type=Path, help="model file (default: <output-dir>/model.zip)")
    transfer.add_argument("--suite", required=True)

    # evaluate
    evaluate = subparsers.add_parser("evaluate", help="Error curves for test suites")
    add_experiment_flags(evaluate)
    evaluate.add_argument("--model", type=Path, help="model file (default: <output-dir>/model.zip)")
    evaluate.add_argument("--suite", action="append", help="suite name, repeatable (default: all)")
    evaluate.add_argument("--snapshot-times", help="comma-separated times for the snapshot CSV")

    # bench
    bench = subparsers.add_parser("bench", help="Time DNS against ESN prediction")
    add_experiment_flags(bench)
    bench.add_argument("--model", type=Path, help="model file (default: <output-dir>/model.zip)")
    bench.add_argument("--suite", default="TEST_4")

    args = parser.parse_args(argv)

    from datagen.build import parse_alpha
    from workflow.config import build_config
    from workflow.io import model_path

    overrides = overrides_from(args)
    if args.alpha is not None:
        try:
            overrides["alpha"] = parse_alpha(args.alpha)
        except ValueError:
            raise ConfigError(f"alpha: cannot parse {args.alpha!r}") from None
    config = build_config(args.config, overrides)

    if args.command == "simulate":
        from workflow.simulate import cmd_simulate, make_ic

        ic = make_ic(args.h0, args.u0, args.a, args.d, args.k, args.p, args.omega1, args.omega2)
        cmd_simulate(config, ic, args.t_end, args.name)
    elif args.command == "gen-data":
        from workflow.gen_data import cmd_gen_data

        asyncio.run(cmd_gen_data(config))
    elif args.command == "train":
        from workflow.train import cmd_train

        asyncio.run(cmd_train(config))
    elif args.command == "transfer":
        from workflow.transfer import cmd_transfer

        asyncio.run(cmd_transfer(config, args.model or model_path(config), args.suite))
    elif args.command == "evaluate":
        from workflow.evaluate import cmd_evaluate

        times = parse_float_list(args.snapshot_times) if args.snapshot_times else []
        asyncio.run(cmd_evaluate(config, args.model or model_path(config), args.suite, times))
    elif args.command == "bench":
        from workflow.bench import cmd_bench

        asyncio.run(cmd_bench(config, args.model, args.suite))


def main(argv: Optional[List[str]] = None) -> int:
    try:
        run(argv)
    except SwesnError as e:
        print(f"error category={e.category} message={e}", file=sys.stderr)
        return exit_code_for(e)
    return 0


if __name__ == "__main__":
    sys.exit(main())
