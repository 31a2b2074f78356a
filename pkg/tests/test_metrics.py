"""Tests for normalized prediction errors and their CSV exports (metrics)."""

import math

import numpy as np
import pytest

from metrics import (
    ErrorCurve,
    channel_block,
    curve_filename,
    read_error_curve_csv,
    suite_error,
    suite_error_curve,
    suite_ratio,
    time_average,
    trajectory_error,
    write_error_curve_csv,
    write_snapshot_csv,
)
from swe_core.types import Trajectory
from workflow.errors import AlignmentError


def _make_traj(T: int = 11, n: int = 8, seed: int = 0, sample_dt: float = 0.1) -> Trajectory:
    rng = np.random.default_rng(seed)
    h = 4.0 + 0.1 * rng.standard_normal((T, n))
    hu = h * (2.5 + 0.1 * rng.standard_normal((T, n)))
    return Trajectory(times=np.arange(T) * sample_dt, states=np.hstack([h, hu]), sample_dt=sample_dt)


def _with_states(traj: Trajectory, states: np.ndarray) -> Trajectory:
    return Trajectory(times=traj.times.copy(), states=states, sample_dt=traj.sample_dt)


def _make_curve(value: float, suite: str = "TEST_1", alpha: float = 0.0, T: int = 5) -> ErrorCurve:
    ones = np.full(T, value)
    return ErrorCurve(times=np.arange(T) * 0.1, e_h=ones, e_hu=2 * ones, e_u=3 * ones, suite=suite, alpha=alpha)


class TestTrajectoryError:
    def test_identical_prediction_has_zero_error(self):
        truth = _make_traj()
        assert np.all(trajectory_error(truth, truth, "h") == 0.0)

    def test_zero_momentum_prediction(self):
        """Constant truth and zero prediction give an error of exactly 1."""
        n = 6
        states = np.hstack([np.full((4, n), 4.0), np.full((4, n), 10.0)])
        truth = Trajectory(times=np.arange(4) * 0.1, states=states, sample_dt=0.1)
        pred = _with_states(truth, np.hstack([states[:, :n], np.zeros((4, n))]))
        np.testing.assert_allclose(trajectory_error(truth, pred, "hu"), 1.0)

    def test_matches_direct_formula(self):
        truth = _make_traj(seed=1)
        pred = _with_states(truth, truth.states + 0.01 * np.random.default_rng(2).standard_normal(truth.states.shape))
        z = np.linspace(0.0, 0.4, truth.n)
        a = truth.h + z
        b = pred.h + z
        expected = np.linalg.norm(a - b, axis=1) / np.mean(np.linalg.norm(a, axis=1))
        np.testing.assert_allclose(trajectory_error(truth, pred, "h", z), expected, rtol=1e-12)

    def test_invariant_to_common_scaling(self):
        truth = _make_traj(seed=3)
        pred = _make_traj(seed=4)
        e1 = trajectory_error(truth, pred, "hu")
        e2 = trajectory_error(_with_states(truth, 7.0 * truth.states), _with_states(pred, 7.0 * pred.states), "hu")
        np.testing.assert_allclose(e1, e2, rtol=1e-12)

    def test_triangle_inequality(self):
        truth = _make_traj(seed=5)
        p1 = _make_traj(seed=6)
        p2 = _make_traj(seed=7)
        e1 = trajectory_error(truth, p1, "h")
        e2 = trajectory_error(truth, p2, "h")
        between = trajectory_error(_with_states(truth, p1.states), p2, "h")
        scale = np.mean(np.linalg.norm(p1.h, axis=1)) / np.mean(np.linalg.norm(truth.h, axis=1))
        assert np.all(e2 <= e1 + scale * between + 1e-12)

    def test_velocity_channel(self):
        truth = _make_traj(seed=8)
        u = channel_block(truth, "u")
        np.testing.assert_allclose(u, truth.hu / truth.h)
        assert np.all(trajectory_error(truth, truth, "u") == 0.0)

    def test_surface_channel_adds_topography(self):
        truth = _make_traj()
        z = np.full(truth.n, 0.5)
        np.testing.assert_allclose(channel_block(truth, "h", z), truth.h + 0.5)

    def test_lake_at_rest_momentum_is_undefined(self):
        n = 6
        states = np.hstack([np.full((3, n), 4.0), np.zeros((3, n))])
        truth = Trajectory(times=np.arange(3) * 0.1, states=states, sample_dt=0.1)
        pred = _with_states(truth, states + 1e-3)
        with pytest.raises(AlignmentError, match="zero"):
            trajectory_error(truth, pred, "hu")
        assert np.all(np.isfinite(trajectory_error(truth, pred, "h")))

    def test_length_mismatch(self):
        with pytest.raises(AlignmentError):
            trajectory_error(_make_traj(T=11), _make_traj(T=10), "h")

    def test_time_mismatch(self):
        truth = _make_traj()
        shifted = Trajectory(times=truth.times + 0.05, states=truth.states, sample_dt=truth.sample_dt)
        with pytest.raises(AlignmentError):
            trajectory_error(truth, shifted, "h")


class TestSuiteError:
    def test_single_curve_is_identity(self):
        curve = np.array([0.1, 0.2, 0.3])
        np.testing.assert_array_equal(suite_error([curve]), curve)

    def test_mean_of_two(self):
        np.testing.assert_allclose(suite_error([np.zeros(4), np.full(4, 0.02)]), np.full(4, 0.01))

    def test_order_does_not_matter(self):
        rng = np.random.default_rng(0)
        curves = [rng.uniform(size=6) for _ in range(5)]
        np.testing.assert_allclose(suite_error(curves), suite_error(curves[::-1]), rtol=1e-14)

    def test_empty(self):
        with pytest.raises(AlignmentError):
            suite_error([])

    def test_different_lengths(self):
        with pytest.raises(AlignmentError):
            suite_error([np.zeros(3), np.zeros(4)])

    def test_curve_over_branch(self):
        truth = [_make_traj(seed=s) for s in range(3)]
        curve = suite_error_curve(truth, truth, "TEST_2", 0.01)
        assert curve.suite == "TEST_2"
        assert curve.alpha == 0.01
        for channel in ("h", "hu", "u"):
            assert np.all(curve.channel(channel) == 0.0)
        np.testing.assert_array_equal(curve.times, truth[0].times)

    def test_curve_count_mismatch(self):
        with pytest.raises(AlignmentError):
            suite_error_curve([_make_traj()], [], "TEST_1", 0.0)


class TestAverages:
    def test_time_average(self):
        averages = time_average(_make_curve(0.1))
        assert averages["h"] == pytest.approx(0.1)
        assert averages["hu"] == pytest.approx(0.2)
        assert averages["u"] == pytest.approx(0.3)

    def test_suite_ratio(self):
        assert suite_ratio(_make_curve(0.3), _make_curve(0.1)) == pytest.approx(3.0)
        assert suite_ratio(_make_curve(0.3), _make_curve(0.1), "u") == pytest.approx(3.0)

    def test_ratio_against_perfect_suite(self):
        assert suite_ratio(_make_curve(0.3), _make_curve(0.0)) == math.inf


class TestErrorCurveCsv:
    def test_read_restores_written_values(self, tmp_path):
        truth = _make_traj(seed=1)
        pred = _make_traj(seed=2)
        curve = suite_error_curve([truth], [pred], "TEST_4", math.inf)
        path = tmp_path / curve_filename("TEST_4", math.inf)
        assert path.name == "errors_TEST_4_alpha_inf.csv"

        write_error_curve_csv(path, curve, config_hash="feed")
        assert path.read_text().startswith("# config_hash=feed\n")
        back = read_error_curve_csv(path)
        np.testing.assert_array_equal(back.e_h, curve.e_h)
        np.testing.assert_array_equal(back.e_u, curve.e_u)
        assert back.suite == "TEST_4"
        assert back.alpha == math.inf


class TestSnapshotCsv:
    def test_one_row_per_cell_and_time(self, tmp_path):
        truth = _make_traj(n=5)
        preds = {0.0: _make_traj(n=5, seed=1), math.inf: _make_traj(n=5, seed=2)}
        x = np.arange(5) * 0.8
        z = np.zeros(5)
        path = tmp_path / "snapshots.csv"
        write_snapshot_csv(path, truth, preds, [0.0, 0.5], x, z)

        lines = path.read_text().splitlines()
        header = lines[0].split(",")
        assert header[:6] == ["t", "x", "z", "h_true", "hu_true", "u_true"]
        assert "u_alpha_inf" in header and "h_alpha_0.0" in header
        assert len(lines) == 1 + 2 * 5
        last = [float(v) for v in lines[-1].split(",")]
        assert last[0] == pytest.approx(0.5)
        assert last[3] == truth.h[5, 4]

    def test_off_grid_time(self, tmp_path):
        truth = _make_traj()
        with pytest.raises(AlignmentError):
            write_snapshot_csv(tmp_path / "s.csv", truth, {}, [0.55], np.zeros(truth.n), np.zeros(truth.n))
        with pytest.raises(AlignmentError):
            write_snapshot_csv(tmp_path / "s.csv", truth, {}, [5.0], np.zeros(truth.n), np.zeros(truth.n))
