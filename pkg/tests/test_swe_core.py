"""Tests for the shallow-water DNS (swe_core)."""

import math

import numpy as np
import pytest

from datagen.sampling import TRAIN_STREAM, realize_ic, sample_training_ic, trajectory_rng
from swe_core import (
    SweConfig,
    SweState,
    Topography,
    bump,
    flat_initial_condition,
    integrate,
    make_topography,
    mass,
    momentum,
    read_trajectory_csv,
    step,
    write_trajectory_csv,
)
from swe_core.scheme import cfl_number, minmod
from workflow.errors import ConfigError, DimensionError, DryCellError, StepSizeError

from .conftest import make_swe


def _make_wave(cfg: SweConfig, h0: float = 4.0, u0: float = 2.5, eps: float = 0.02, k: int = 1) -> SweState:
    """Flat-bottom sine perturbation of the level and velocity."""
    phase = 2.0 * math.pi * k * cfg.x / cfg.L
    h = h0 * (1.0 + eps * np.sin(phase))
    u = u0 * (1.0 + eps * np.cos(phase))
    return SweState(h=h, hu=h * u)


class TestSweConfig:
    def test_defaults_give_400_cells(self):
        cfg = SweConfig()
        assert cfg.n == 400
        assert cfg.x[0] == 0.0
        assert cfg.x[-1] == pytest.approx(39.9)

    def test_rejects_non_integer_cell_count(self):
        with pytest.raises(ConfigError):
            SweConfig(dx=0.3)

    def test_rejects_negative_viscosity(self):
        with pytest.raises(ConfigError):
            SweConfig(nu=-0.1)


class TestTopography:
    def test_peak_at_centre(self):
        cfg = SweConfig()
        assert float(bump(20.0, cfg)) == pytest.approx(0.48)

    def test_zero_at_bump_endpoints(self):
        cfg = SweConfig()
        assert float(bump(16.0, cfg)) == 0.0
        assert float(bump(24.0, cfg)) == 0.0

    def test_zero_outside_support(self):
        cfg = SweConfig()
        assert np.all(bump(np.array([0.0, 10.0, 15.9, 24.1, 39.9]), cfg) == 0.0)

    def test_flat_bottom(self):
        topo = make_topography(SweConfig(topo_height=0.0))
        assert np.all(topo.z == 0.0)

    def test_grid_sampling(self):
        topo = make_topography(SweConfig())
        assert topo.n == 400
        assert topo.z.max() == pytest.approx(0.48)
        assert topo.z[200] == pytest.approx(0.48)


class TestFlatInitialCondition:
    def test_height_at_bump_peak(self):
        cfg = SweConfig()
        state = flat_initial_condition(cfg, 4.0, 2.5)
        assert state.h[200] == pytest.approx(3.52)
        assert state.hu[200] == pytest.approx(3.52 * 2.5)
        assert state.t == 0.0

    def test_lake_at_rest_has_no_momentum(self):
        state = flat_initial_condition(SweConfig(), 4.0, 0.0)
        assert np.all(state.hu == 0.0)

    def test_flat_bottom_gives_uniform_height(self):
        state = flat_initial_condition(SweConfig(topo_height=0.0), 4.0, 2.5)
        assert np.all(state.h == 4.0)

    def test_level_below_crest_is_dry(self):
        with pytest.raises(DryCellError):
            flat_initial_condition(SweConfig(), 0.4, 0.0)


class TestMinmod:
    def test_picks_smaller_magnitude_when_signs_agree(self):
        out = minmod(np.array([1.0, -3.0, 2.0]), np.array([2.0, -1.0, -1.0]))
        assert list(out) == [1.0, -1.0, 0.0]


class TestStep:
    def test_lake_at_rest_is_preserved(self, swe_cfg):
        topo = make_topography(swe_cfg)
        state = flat_initial_condition(swe_cfg, 4.0, 0.0, topo)
        surface0 = state.h + topo.z
        for _ in range(10_000):
            state = step(state, swe_cfg, topo)
        assert np.max(np.abs(state.h + topo.z - surface0)) < 1e-10
        assert np.max(np.abs(state.hu)) < 1e-10

    def test_single_step_lake_at_rest(self):
        cfg = SweConfig()
        topo = make_topography(cfg)
        state = flat_initial_condition(cfg, 4.0, 0.0, topo)
        nxt = step(state, cfg, topo)
        assert np.max(np.abs(nxt.h - state.h)) < 1e-12
        assert np.max(np.abs(nxt.hu)) < 1e-12

    def test_mass_conserved_with_topography(self, swe_cfg):
        topo = make_topography(swe_cfg)
        rng, _ = trajectory_rng(11, TRAIN_STREAM, 0)
        state = realize_ic(sample_training_ic(rng), swe_cfg, topo)
        m0 = mass(state, swe_cfg)
        for _ in range(10_000):
            state = step(state, swe_cfg, topo)
        assert abs(mass(state, swe_cfg) - m0) / m0 < 1e-10

    def test_mean_height_per_step(self, swe_cfg):
        topo = make_topography(swe_cfg)
        state = _make_wave(swe_cfg)
        nxt = step(state, swe_cfg, topo)
        assert abs(nxt.h.mean() - state.h.mean()) / state.h.mean() < 1e-13

    def test_time_advances_by_fine_step(self, swe_cfg):
        nxt = step(_make_wave(swe_cfg), swe_cfg)
        assert nxt.t == pytest.approx(swe_cfg.dt_fine)

    def test_cfl_violation(self):
        cfg = make_swe(dt_fine=0.1)
        state = flat_initial_condition(cfg, 4.0, 2.5)
        assert cfl_number(state, cfg) > 1.0
        with pytest.raises(StepSizeError):
            step(state, cfg)

    def test_dry_cell_rejected(self, swe_cfg):
        h = np.full(swe_cfg.n, 4.0)
        h[3] = 0.0
        with pytest.raises(DryCellError):
            step(SweState(h=h, hu=np.zeros_like(h)), swe_cfg)

    def test_topography_length_mismatch(self, swe_cfg):
        state = _make_wave(swe_cfg)
        with pytest.raises(DimensionError):
            step(state, swe_cfg, Topography(z=np.zeros(swe_cfg.n + 1)))

    def test_viscous_fourier_mode_decays(self):
        """Travelling wave energy follows exp(-nu k^2 t) from the linearized equations."""
        nu, h0, g, eps = 2.0, 4.0, 32.0, 1e-3
        cfg = SweConfig(dx=0.4, dt_fine=0.002, nu=nu, topo_height=0.0)
        k = 2.0 * math.pi / cfg.L
        eta = eps * np.sin(k * cfg.x)
        u = math.sqrt(g * h0) / h0 * eta
        h = h0 + eta
        traj = integrate(SweState(h=h, hu=h * u), cfg, t_end=10.0, sample_dt=1.0)

        energy = [
            float(np.sum(g * (traj.h[i] - h0) ** 2 + h0 * (traj.hu[i] / traj.h[i]) ** 2))
            for i in range(len(traj))
        ]
        assert all(b <= a * (1 + 1e-9) for a, b in zip(energy, energy[1:]))
        expected = math.exp(-nu * k**2 * 10.0)
        ratio = energy[-1] / energy[0]
        assert 0.9 * expected < ratio < 1.03 * expected

    def test_periodic_shift_commutes(self):
        cfg = make_swe(topo_height=0.0)
        state = _make_wave(cfg, k=2)
        shift = 7
        shifted = SweState(h=np.roll(state.h, shift), hu=np.roll(state.hu, shift))
        a = integrate(state, cfg, t_end=1.0, sample_dt=0.5)
        b = integrate(shifted, cfg, t_end=1.0, sample_dt=0.5)
        np.testing.assert_allclose(np.roll(a.h[-1], shift), b.h[-1], rtol=0, atol=1e-12)
        np.testing.assert_allclose(np.roll(a.hu[-1], shift), b.hu[-1], rtol=0, atol=1e-12)

    @pytest.mark.slow
    def test_second_order_convergence(self):
        """Smooth inviscid run: L1 error against a 4x finer reference drops ~4x per halving."""

        def run(dx: float) -> np.ndarray:
            cfg = SweConfig(dx=dx, dt_fine=0.0005, nu=0.0, topo_height=0.0)
            return integrate(_make_wave(cfg, eps=0.05), cfg, t_end=0.5, sample_dt=0.5).states[-1]

        reference = run(0.025)
        errors = []
        for dx, factor in ((0.2, 8), (0.1, 4)):
            coarse = run(dx)
            n = coarse.shape[0] // 2
            fine = np.concatenate([reference[: reference.shape[0] // 2][::factor], reference[reference.shape[0] // 2 :][::factor]])
            assert fine.shape[0] == 2 * n
            errors.append(float(np.mean(np.abs(coarse - fine))))
        order = math.log2(errors[0] / errors[1])
        assert order >= 1.8


class TestIntegrate:
    def test_snapshot_count(self, swe_cfg):
        traj = integrate(flat_initial_condition(swe_cfg, 4.0, 2.5), swe_cfg, t_end=30.0, sample_dt=0.1)
        assert len(traj) == 301
        assert traj.times[-1] == pytest.approx(30.0)
        assert traj.states.shape == (301, 2 * swe_cfg.n)

    def test_zero_horizon_returns_initial_state(self, swe_cfg):
        state = _make_wave(swe_cfg)
        traj = integrate(state, swe_cfg, t_end=0.0, sample_dt=0.1)
        assert len(traj) == 1
        np.testing.assert_array_equal(traj.states[0], state.flatten())

    def test_sample_dt_must_be_multiple_of_fine_step(self, swe_cfg):
        with pytest.raises(ConfigError):
            integrate(_make_wave(swe_cfg), swe_cfg, t_end=1.0, sample_dt=0.0055)

    def test_t_end_must_be_multiple_of_sample_dt(self, swe_cfg):
        with pytest.raises(ConfigError):
            integrate(_make_wave(swe_cfg), swe_cfg, t_end=1.05, sample_dt=0.1)

    @pytest.mark.slow
    def test_momentum_quasi_conserved_at_full_resolution(self):
        cfg = SweConfig()
        topo = make_topography(cfg)
        rng, _ = trajectory_rng(0, TRAIN_STREAM, 0)
        state = realize_ic(sample_training_ic(rng), cfg, topo)
        traj = integrate(state, cfg, t_end=60.0, sample_dt=0.1, topo=topo)
        p0 = momentum(state, cfg)
        drift = np.abs(traj.hu.sum(axis=1) * cfg.dx - p0) / abs(p0)
        assert drift.max() < 2e-3


class TestConservedQuantities:
    def test_mass_of_flat_state(self):
        cfg = SweConfig()
        state = flat_initial_condition(cfg, 4.0, 2.5)
        # 40 * 4 minus the bump area (2/3) H W = 2.56
        assert mass(state, cfg) == pytest.approx(160.0 - 2.56, abs=1e-3)

    def test_momentum_of_lake_at_rest(self):
        cfg = SweConfig()
        assert momentum(flat_initial_condition(cfg, 4.0, 0.0), cfg) == 0.0

    def test_momentum_linear_in_velocity(self):
        cfg = SweConfig()
        p1 = momentum(flat_initial_condition(cfg, 4.0, 1.0), cfg)
        p3 = momentum(flat_initial_condition(cfg, 4.0, 3.0), cfg)
        assert p3 == pytest.approx(3.0 * p1)


class TestTrajectoryCsv:
    def test_read_restores_written_values(self, tmp_path, swe_cfg):
        traj = integrate(_make_wave(swe_cfg), swe_cfg, t_end=0.3, sample_dt=0.1)
        path = tmp_path / "traj.csv"
        write_trajectory_csv(path, traj, swe_cfg, tags={"config_hash": "abc123"})
        back = read_trajectory_csv(path)
        np.testing.assert_array_equal(back.states, traj.states)
        np.testing.assert_array_equal(back.times, traj.times)
        assert back.sample_dt == 0.1
        assert back.meta["config_hash"] == "abc123"

    def test_missing_file(self, tmp_path):
        from workflow.errors import ArtifactError

        with pytest.raises(ArtifactError):
            read_trajectory_csv(tmp_path / "nope.csv")
