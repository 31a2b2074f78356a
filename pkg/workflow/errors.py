"""Error hierarchy shared by the solver, reservoir and experiment layers.

Every error carries a machine-readable ``category`` that the CLI echoes on
stderr and maps to an exit code.
"""

from typing import Dict


class SwesnError(Exception):
    """Base class for all expected failures."""

    category = "error"


class ConfigError(SwesnError):
    """Invalid configuration value, unknown key or inconsistent parameters."""

    category = "config"


class DryCellError(SwesnError):
    """Water height fell below the dry floor (or an IC would start dry)."""

    category = "dry_cell"


class StepSizeError(SwesnError):
    """CFL number reached 1 for the fixed fine step."""

    category = "step_size"


class ConstructionError(SwesnError):
    """Reservoir adjacency could not be normalized after bounded retries."""

    category = "construction"


class RankDeficiencyError(SwesnError):
    """Normal-equations matrix is not positive definite (λ = 0 or α = 0)."""

    category = "rank_deficiency"


class DimensionError(SwesnError):
    """Vector or matrix shape does not match the model."""

    category = "dimension"


class UntrainedModelError(SwesnError):
    """Prediction or transfer requested before a readout was fitted."""

    category = "untrained"


class TransferRefusedError(SwesnError):
    """Transfer set requested for a suite without an ambient shift."""

    category = "transfer_refused"


class AlignmentError(SwesnError):
    """Trajectories or error curves do not share a time grid."""

    category = "alignment"


class ArtifactError(SwesnError):
    """A required artifact is missing or unreadable."""

    category = "io"


EXIT_CODES: Dict[str, int] = {
    "config": 2,
    "dry_cell": 3,
    "step_size": 3,
    "construction": 3,
    "rank_deficiency": 3,
    "dimension": 4,
    "untrained": 4,
    "transfer_refused": 4,
    "alignment": 4,
    "io": 5,
}


def exit_code_for(error: SwesnError) -> int:
    """Map an error to the process exit code (1 for anything unmapped)."""
    return EXIT_CODES.get(error.category, 1)
