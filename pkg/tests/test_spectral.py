"""Pseudo-spectral torus evolution, norms and serialization."""

import math

import numpy as np
import pytest

from sigmalab.dispersion import kernel_hat, kernel_hat_dt
from sigmalab.params import ModelParams
from sigmalab.spectral import (BlowUpError, Field, Snapshot, gaussian_field,
                               gevrey_energy, linear_evolve, load_field,
                               lq_norm, make_grid, riesz_apply,
                               semilinear_solve, write_norms_csv, zero_field)

P_SMALL = ModelParams.make(sigma=1, delta="1/4", mu=1, n=1, q=2, m=1)


def plane_wave_snapshot(grid, k_index):
    """cos(xi_k x) initial displacement with zero velocity."""
    xi = 2.0 * np.pi * k_index / (2.0 * grid.L)
    u = Field(grid, np.cos(xi * grid.x).astype(complex), "physical")
    return Snapshot(0.0, u, zero_field(grid)), xi


class TestGrid:
    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            make_grid(1, 10.0, 100)        # not a power of two
        with pytest.raises(ValueError):
            make_grid(4, 10.0, 64)         # unsupported dimension
        with pytest.raises(ValueError):
            make_grid(1, -1.0, 64)

    def test_frequency_spacing(self):
        grid = make_grid(1, 20.0, 128)
        xi = np.sort(grid.xi)
        assert np.diff(xi) == pytest.approx(np.pi / 20.0)


class TestLinearEvolve:
    def test_plane_wave_matches_mode_kernels(self):
        # A single Fourier mode evolves by scalar multiplication with
        # the closed-form kernels -- zero spatial discretisation error.
        grid = make_grid(1, 10.0, 256)
        snap, xi = plane_wave_snapshot(grid, 5)
        for t in [0.3, 2.0, 9.0]:
            out = linear_evolve(snap, t, P_SMALL)
            pair = kernel_hat(t, xi, P_SMALL)
            dpair = kernel_hat_dt(t, xi, P_SMALL)
            expected_u = pair.k0 * np.cos(xi * grid.x)
            expected_ut = dpair.k0 * np.cos(xi * grid.x)
            np.testing.assert_allclose(out.u.to_physical().values.real,
                                       expected_u, atol=1e-12)
            np.testing.assert_allclose(out.ut.to_physical().values.real,
                                       expected_ut, atol=1e-12)

    def test_velocity_datum_channel(self):
        grid = make_grid(1, 10.0, 256)
        xi = 2.0 * np.pi * 3 / (2.0 * grid.L)
        ut0 = Field(grid, np.cos(xi * grid.x).astype(complex), "physical")
        snap = Snapshot(0.0, zero_field(grid), ut0)
        out = linear_evolve(snap, 1.5, P_SMALL)
        pair = kernel_hat(1.5, xi, P_SMALL)
        np.testing.assert_allclose(out.u.to_physical().values.real,
                                   pair.k1 * np.cos(xi * grid.x), atol=1e-12)

    def test_zero_data_stays_zero(self):
        grid = make_grid(1, 5.0, 64)
        snap = Snapshot(0.0, zero_field(grid), zero_field(grid))
        out = linear_evolve(snap, 4.0, P_SMALL)
        assert lq_norm(out.u, 2.0) == 0.0


class TestSemilinear:
    def test_none_equals_exact_linear_flow(self):
        grid = make_grid(1, 40.0, 512)
        snap = Snapshot(0.0, gaussian_field(grid, 0.5), zero_field(grid))
        traj = semilinear_solve(snap, P_SMALL, "none", t_end=4.0, dt=0.5,
                                store_every=8)
        exact = linear_evolve(snap, 4.0, P_SMALL)
        final = traj.snapshots[-1]
        assert final.t == pytest.approx(4.0)
        np.testing.assert_allclose(final.u.to_physical().values,
                                   exact.u.to_physical().values, atol=1e-12)

    def test_small_amplitude_tracks_linear(self):
        grid = make_grid(1, 40.0, 512)
        params = P_SMALL.with_(p=3)
        eps = 1e-4
        snap = Snapshot(0.0, gaussian_field(grid, eps), zero_field(grid))
        traj = semilinear_solve(snap, params, "abs_u_p", t_end=2.0, dt=0.05,
                                store_every=40)
        linear = linear_evolve(snap, 2.0, params)
        diff = (traj.snapshots[-1].u.to_physical().values
                - linear.u.to_physical().values)
        # Cubic nonlinearity: relative deviation O(eps^2) ~ 1e-8.
        rel = np.max(np.abs(diff)) / np.max(
            np.abs(linear.u.to_physical().values))
        assert rel < 1e-6

    def test_blowup_detection(self):
        grid = make_grid(1, 20.0, 128)
        snap = Snapshot(0.0, gaussian_field(grid, 1.0), zero_field(grid))
        with pytest.raises(BlowUpError) as exc:
            semilinear_solve(snap, P_SMALL, "none", t_end=5.0, dt=0.5,
                             norm_ceiling=1e-9)
        assert exc.value.t > 0.0
        assert exc.value.norm > exc.value.ceiling

    def test_unknown_nonlinearity_rejected(self):
        grid = make_grid(1, 20.0, 64)
        snap = Snapshot(0.0, gaussian_field(grid), zero_field(grid))
        with pytest.raises(ValueError):
            semilinear_solve(snap, P_SMALL, "cubic", t_end=1.0, dt=0.1)

    def test_nonlinearity_requires_p(self):
        grid = make_grid(1, 20.0, 64)
        snap = Snapshot(0.0, gaussian_field(grid), zero_field(grid))
        with pytest.raises(ValueError):
            semilinear_solve(snap, P_SMALL, "abs_u_p", t_end=1.0, dt=0.1)


class TestNormsAndOperators:
    def test_lq_norm_constant_field(self):
        grid = make_grid(1, 10.0, 64)
        c = 0.7
        f = Field(grid, np.full(64, c, dtype=complex), "physical")
        for q in [1.0, 2.0, 4.0]:
            assert lq_norm(f, q) == pytest.approx(c * (2 * grid.L) ** (1 / q))
        assert lq_norm(f, math.inf) == pytest.approx(c)

    def test_lq_norm_rejects_bad_exponent(self):
        grid = make_grid(1, 10.0, 64)
        with pytest.raises(ValueError):
            lq_norm(zero_field(grid), 0.5)

    def test_riesz_plane_wave(self):
        # |D|^a cos(xi x) = xi^a cos(xi x).
        grid = make_grid(1, 10.0, 256)
        snap, xi = plane_wave_snapshot(grid, 7)
        for a in [0.5, 1.0, 2.0]:
            out = riesz_apply(snap.u, a)
            np.testing.assert_allclose(out.to_physical().values.real,
                                       xi ** a * np.cos(xi * grid.x),
                                       atol=1e-10)

    def test_riesz_identity_and_rejection(self):
        grid = make_grid(1, 10.0, 64)
        f = gaussian_field(grid)
        assert riesz_apply(f, 0.0) is f
        with pytest.raises(ValueError):
            riesz_apply(f, -1.0)

    def test_gevrey_energy_zero_field(self):
        grid = make_grid(1, 10.0, 64)
        snap = Snapshot(1.0, zero_field(grid), zero_field(grid))
        assert gevrey_energy(snap, 0.2, P_SMALL) == 0.0

    def test_gevrey_energy_requires_positive_rate(self):
        grid = make_grid(1, 10.0, 64)
        snap = Snapshot(0.0, gaussian_field(grid), zero_field(grid))
        with pytest.raises(ValueError):
            gevrey_energy(snap, 0.0, P_SMALL)


class TestSerialization:
    def test_dump_load_roundtrip(self, tmp_path):
        from sigmalab.spectral import dump_field
        grid = make_grid(1, 15.0, 128)
        f = gaussian_field(grid, 0.3, width=2.0)
        path = str(tmp_path / "field.bin")
        dump_field(f, 1.25, path)
        loaded, t = load_field(path)
        assert t == 1.25
        assert loaded.grid == grid
        np.testing.assert_allclose(loaded.values, f.values, atol=1e-15)

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"not a dump")
        with pytest.raises(ValueError):
            load_field(str(path))

    def test_norms_csv_schema(self, tmp_path):
        grid = make_grid(1, 20.0, 128)
        snap = Snapshot(0.0, gaussian_field(grid), zero_field(grid))
        traj = semilinear_solve(snap, P_SMALL, "none", t_end=1.0, dt=0.5)
        path = str(tmp_path / "norms.csv")
        write_norms_csv(traj, path, q_list=(2.0, math.inf), s_riesz=1.0)
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0] == "# schema=1"
        assert lines[1].startswith("t,norm_L2,norm_Linf,")
        assert len(lines) == 2 + len(traj.snapshots)
