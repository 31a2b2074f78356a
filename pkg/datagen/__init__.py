"""Randomized initial conditions, training sets and the testing matrix."""

from .build import (
    SAMPLE_DT,
    TEST_T_END,
    TRAIN_T_END,
    TRANSFER_T_END,
    SimulationJob,
    alpha_label,
    build_test_suite,
    build_training_set,
    build_transfer_set,
    parse_alpha,
    run_job,
    run_simulations,
    suite_params,
    transfer_pairs,
)
from .io import read_manifest, read_training_set, write_training_set
from .sampling import (
    default_suites,
    is_reference,
    realize_ic,
    sample_testing_ic,
    sample_training_ic,
    suite_by_name,
    trajectory_rng,
)
from .types import IcParams, SuiteRun, TestSuiteSpec, TrainingSet, TrajectoryRecord
