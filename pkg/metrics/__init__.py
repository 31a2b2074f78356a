"""Normalized L2 prediction errors."""

from .errors import (
    CHANNELS,
    ErrorCurve,
    channel_block,
    suite_error,
    suite_error_curve,
    suite_ratio,
    time_average,
    trajectory_error,
)
from .io import curve_filename, read_error_curve_csv, write_error_curve_csv, write_snapshot_csv
