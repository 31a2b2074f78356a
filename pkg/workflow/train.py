"""train command: drive the reservoir with the training set and fit the readout."""

from pathlib import Path

from esn.io import save_model
from esn.readout import train, training_residual
from esn.reservoir import build, drive_gram, effective_lambda

from .config import ExperimentConfig
from .gen_data import load_training_set
from .io import model_path, train_report_path, write_json
from .types import TrainReport


async def cmd_train(config: ExperimentConfig) -> Path:
    """Build, drive, train and save; returns the model path.

    The same seed gives a byte-identical model file.
    """
    training = await load_training_set(config)
    X = training.X

    print(f"Building reservoir D={config.esn.D}, beta2={config.esn.beta2}, density={config.esn.density}")
    model = build(config.esn)

    print(f"Driving reservoir over {X.shape[1]} columns ({len(training.records)} trajectories)")
    gram = drive_gram(model, X, training.boundaries)
    lam = effective_lambda(config.esn, gram)
    w_out = train(gram, lam)
    trained = model.with_readout(w_out)

    path = model_path(config)
    save_model(path, trained, tags={"config_hash": config.config_hash(), "role": "trained"})
    print(f"Written: {path}")

    residual = training_residual(w_out, gram)
    report = TrainReport(
        config_hash=config.config_hash(),
        model=str(path),
        seed=config.seed,
        trajectories=len(training.records),
        pairs=gram.count,
        boundaries=training.boundaries,
        lambda_effective=lam,
        residual=residual,
        residual_threshold=config.residual_threshold,
        residual_ok=residual < config.residual_threshold,
    )
    write_json(train_report_path(config), report)
    status = "ok" if report["residual_ok"] else "ABOVE THRESHOLD"
    print(f"Pairs: {gram.count}, lambda={lam:.3e}, one-step residual {residual:.3e} ({status})")
    return path
