import numpy as np
import pytest
from scipy import integrate

from nevlab.errors import BadRadiusError
from nevlab.quadrature import (
    DiskQuadrature,
    circle_mean,
    circle_mean_adaptive,
    hardy_norm_ball,
    sphere_uniform,
)


class TestDiskQuadrature:
    def test_total_weight(self):
        dq = DiskQuadrature.standard()
        assert dq.total_weight == pytest.approx(1.0, abs=1e-12)
        dq = DiskQuadrature.boundary_graded()
        assert dq.total_weight == pytest.approx(1.0, abs=1e-12)

    def test_log_moment(self):
        # (1/pi) int_D log(1/|w|) dA = 1/2, resolved exactly by the
        # origin-graded panels
        dq = DiskQuadrature.standard()
        assert dq.log_moment == pytest.approx(0.5, abs=1e-8)

    def test_radial_moments(self):
        dq = DiskQuadrature.standard()
        for k in (1, 2, 5, 10):
            got = dq.integrate(lambda w, k=k: np.abs(w) ** (2 * k))
            assert got == pytest.approx(1.0 / (k + 1), rel=1e-12)

    def test_harmonic_mean_value(self):
        # (1/pi) int_D Re(w^3) dA = 0 by symmetry
        dq = DiskQuadrature.standard()
        got = dq.integrate(lambda w: np.real(w ** 3))
        assert got == pytest.approx(0.0, abs=1e-12)

    def test_nodes_inside_open_disk(self):
        for dq in (DiskQuadrature.standard(), DiskQuadrature.boundary_graded()):
            w = dq.nodes()
            r = np.abs(w)
            assert np.all(r > 0)
            assert np.all(r < 1.0)

    def test_boundary_graded_avoids_real_axis(self):
        # the half-step angular offset keeps nodes away from atoms at
        # unimodular points on the sampling rays
        dq = DiskQuadrature.boundary_graded()
        w = dq.nodes()
        assert np.min(np.abs(w - 1.0)) > 1e-8

    def test_mean_over_disk_harmonic(self):
        # harmonic functions satisfy the mean value property exactly
        dq = DiskQuadrature.standard()
        center, rho = 0.2 + 0.1j, 0.3
        got = dq.mean_over_disk(lambda w: np.real(w ** 2), center, rho)
        assert got == pytest.approx((center ** 2).real, abs=1e-12)


class TestCircleMeans:
    def test_circle_mean_polynomial(self):
        got = circle_mean(lambda z: np.abs(1 + 2 * z) ** 2, 0.5, 64)
        assert got == pytest.approx(1 + 4 * 0.25, rel=1e-13)

    def test_adaptive_matches_quad(self):
        f = lambda z: 1.0 / np.abs(1 - 0.9 * z) ** 2
        got = circle_mean_adaptive(f, 0.95)
        ref, _ = integrate.quad(
            lambda t: 1.0 / abs(1 - 0.9 * 0.95 * np.exp(1j * t)) ** 2,
            0, 2 * np.pi, limit=400)
        assert got == pytest.approx(ref / (2 * np.pi), rel=1e-10)


class TestSphere:
    def test_points_on_sphere(self):
        sph = sphere_uniform(3, 500, seed=7)
        norms = np.linalg.norm(sph.points, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-12)
        assert sph.n == 500
        assert sph.weights.sum() == pytest.approx(1.0)

    def test_seed_reproducible(self):
        a = sphere_uniform(2, 100, seed=3).points
        b = sphere_uniform(2, 100, seed=3).points
        assert np.array_equal(a, b)

    def test_coordinate_moment(self):
        # E|zeta_1|^2 = 1/d on the unit sphere of C^d
        for d in (2, 3):
            sph = sphere_uniform(d, 200_000, seed=1)
            m = np.mean(np.abs(sph.points[:, 0]) ** 2)
            assert m == pytest.approx(1.0 / d, abs=3e-3)

    def test_hardy_norm_ball_d1_matches_direct_mean(self):
        sph = sphere_uniform(1, 64, seed=0)

        def gg(pts):
            lam = pts[:, 0] if pts.ndim == 2 else pts
            return 1 + 0.5 * lam

        got = hardy_norm_ball(gg, 2, 1, sph, 0.9)
        lam = sph.points[:, 0]
        ref = np.sqrt(np.mean(np.abs(1 + 0.5 * 0.9 * lam) ** 2))
        assert got == pytest.approx(ref, rel=1e-12)

    def test_hardy_norm_ball_bad_radius(self):
        sph = sphere_uniform(2, 32, seed=0)
        with pytest.raises(BadRadiusError):
            hardy_norm_ball(lambda p: np.ones(p.shape[0]), 2, 2, sph, 1.0)
