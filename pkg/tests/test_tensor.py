"""Finite-difference tensor engine against closed-form geometry."""

import math

import numpy as np
import pytest

from skrp import models, tensor
from skrp.errors import StencilOutOfDomain
from conftest import euclidean_chart


def conformal_2d_chart(factor, dfactor=None, domain=None):
    """2D chart with metric factor(r^2) * I, vectorized."""

    def g(pts):
        pts = np.asarray(pts, dtype=float)
        r2 = np.einsum("bi,bi->b", pts, pts)
        return factor(r2)[:, None, None] * np.eye(2)[None]

    dom = domain or (lambda pts: np.ones(len(pts), dtype=bool))
    return tensor.ChartMetric(n=2, g=g, J=models.standard_J(1),
                              phi=lambda pts: np.zeros(len(pts)),
                              domain=dom, meta={})


def sphere_chart(K):
    return conformal_2d_chart(lambda r2: (4.0 / K) / (1.0 + r2) ** 2)


class TestChristoffel:
    def test_euclidean_zero(self, fd):
        ch = euclidean_chart(2)
        gam = tensor.connection_coefficients(ch, [0.3, -0.2, 0.5, 0.1], fd)
        assert np.max(np.abs(gam)) < 1e-12

    def test_scale_invariance(self, fd):
        lam = 7.0
        K = 4.0
        g1 = sphere_chart(K)
        g2 = conformal_2d_chart(lambda r2: lam * (4.0 / K) / (1.0 + r2) ** 2)
        x = np.array([0.4, -0.3])
        gam1 = tensor.connection_coefficients(g1, x, fd)
        gam2 = tensor.connection_coefficients(g2, x, fd)
        assert np.max(np.abs(gam1 - gam2)) < 1e-10

    def test_conformal_closed_form(self, fd):
        # For g = e^(2u) I in 2D: Gam^1_11 = u_1, Gam^1_12 = u_2,
        # Gam^1_22 = -u_1, and symmetrically for the second index.
        K = 4.0
        ch = sphere_chart(K)
        x = np.array([0.3, 0.4])
        r2 = float(x @ x)
        u1, u2 = -2.0 * x / (1.0 + r2)
        gam = tensor.connection_coefficients(ch, x, fd)
        expect = np.array([[[u1, u2], [u2, -u1]],
                           [[-u2, u1], [u1, u2]]])
        assert np.max(np.abs(gam - expect)) < 1e-7


class TestCurvature:
    def test_euclidean_zero(self, fd):
        ch = euclidean_chart(2)
        curv = tensor.curvature(ch, [0.3, -0.2, 0.5, 0.1], fd)
        assert np.max(np.abs(curv.riemann)) < 1e-10
        assert np.max(np.abs(curv.ricci)) < 1e-10

    @pytest.mark.parametrize("K", [1.0, 4.0])
    def test_round_sphere_positive_ricci(self, fd, K):
        ch = sphere_chart(K)
        for x in ([0.3, 0.4], [0.9, -0.1]):
            curv = tensor.curvature(ch, x, fd)
            g = np.asarray(ch.g(np.asarray(x)[None, :]))[0]
            assert np.max(np.abs(curv.ricci - K * g)) < 1e-6 * K * np.max(g)

    def test_hyperbolic_negative_ricci(self, fd):
        K = 4.0
        ch = conformal_2d_chart(
            lambda r2: (4.0 / K) / (1.0 - r2) ** 2,
            domain=lambda pts: np.einsum("bi,bi->b", pts, pts) < 1.0)
        x = np.array([0.2, 0.1])
        curv = tensor.curvature(ch, x, fd)
        g = np.asarray(ch.g(x[None, :]))[0]
        assert np.max(np.abs(curv.ricci + K * g)) < 1e-6 * K * np.max(g)

    def test_ricci_contraction_consistency(self, fd, shell_chart):
        x = models.sample_points(shell_chart, 3, seed=5)[0]
        curv = tensor.curvature(shell_chart, x, fd)
        lowered = np.einsum("lm,lijk->ijkm", curv.jet.g, curv.riemann)
        direct = np.einsum("jl,ijkl->ik", curv.jet.ginv, lowered)
        scale = np.max(np.abs(curv.ricci)) + 1.0
        assert np.max(np.abs(curv.ricci - direct)) < 1e-8 * scale

    def test_first_bianchi(self, fd, shell_chart):
        rng = np.random.default_rng(11)
        x = models.sample_points(shell_chart, 1, seed=13)[0]
        curv = tensor.curvature(shell_chart, x, fd)
        riem = curv.riemann
        cyc = (riem + np.einsum("lijk->ljki", riem)
               + np.einsum("lijk->lkij", riem))
        for _ in range(5):
            u, v, w = rng.normal(size=(3, shell_chart.n))
            val = np.einsum("lijk,i,j,k->l", cyc, u, v, w)
            scale = (np.max(np.abs(riem)) + 1.0) * np.linalg.norm(u) \
                * np.linalg.norm(v) * np.linalg.norm(w)
            assert np.max(np.abs(val)) < 1e-7 * scale

    def test_fd_convergence_order(self):
        # With Richardson off and steps where truncation dominates, halving
        # h must reduce the sphere curvature error by at least 8x.
        K = 4.0
        ch = sphere_chart(K)
        x = np.array([0.35, 0.15])
        g = np.asarray(ch.g(x[None, :]))[0]
        errs = []
        for h in (0.04, 0.02):
            curv = tensor.curvature(ch, x,
                                    tensor.FDConfig(h=h, richardson=False))
            errs.append(np.max(np.abs(curv.ricci - K * g)))
        assert errs[0] / errs[1] >= 8.0


class TestPotential:
    def test_norm_squared(self, fd):
        ch = euclidean_chart(2)
        x = np.array([0.3, -0.2, 0.5, 0.1])
        pot = tensor.potential_derivatives(ch, x, fd)
        assert np.max(np.abs(pot.hess_phi - 2.0 * np.eye(4))) < 1e-9
        assert pot.Y == pytest.approx(8.0, abs=1e-8)
        assert pot.Q == pytest.approx(4.0 * float(x @ x), rel=1e-9)

    def test_linear(self, fd):
        ch = euclidean_chart(2, phi="linear")
        pot = tensor.potential_derivatives(ch, [0.3, -0.2, 0.5, 0.1], fd)
        assert np.max(np.abs(pot.hess_phi)) < 5e-10
        assert pot.Y == pytest.approx(0.0, abs=5e-10)

    def test_hessian_symmetric(self, fd, shell_chart):
        x = models.sample_points(shell_chart, 1, seed=3)[0]
        pot = tensor.potential_derivatives(shell_chart, x, fd)
        assert np.max(np.abs(pot.hess_phi - pot.hess_phi.T)) < 1e-10


class TestGeodesics:
    def test_straight_line(self, fd):
        ch = euclidean_chart(1)
        path = tensor.geodesic(ch, [0.0, 0.0], [0.6, 0.8], 2.0, fd,
                               n_steps=512)
        assert np.max(np.abs(path.x[0][-1] - np.array([1.2, 1.6]))) < 1e-12
        assert path.drift[0] < 1e-12

    def test_sphere_antipode_distance(self, fd):
        # Pole-to-pole arclength equals pi/sqrt(K); measured as twice the
        # arclength to the equator r = 1 (the inversion-fixed circle).
        K = 4.0
        ch = sphere_chart(K)
        path = tensor.geodesic(ch, [0.0, 0.0], [1.0, 0.0],
                               0.9 * math.pi / math.sqrt(K), fd,
                               n_steps=4096, record_every=4)
        r = np.linalg.norm(path.x[0], axis=1)
        idx = int(np.argmax(r >= 1.0))
        f = (1.0 - r[idx - 1]) / (r[idx] - r[idx - 1])
        s_cross = path.s[idx - 1] + f * (path.s[idx] - path.s[idx - 1])
        assert 2.0 * s_cross == pytest.approx(math.pi / math.sqrt(K),
                                              abs=1e-4)

    def test_energy_drift(self, fd):
        # |v|_g stays within 1e-6 of 1 over arclength 5.
        ch = sphere_chart(0.16)
        path = tensor.geodesic(ch, [0.0, 0.0], [1.0, 0.0], 5.0, fd,
                               n_steps=4096)
        assert path.alive[0]
        assert path.drift[0] < 1e-6

    def test_energy_drift_shell(self, fd, shell_chart):
        x0 = np.zeros(4)
        x0[0] = shell_chart.meta["r_range"][0] * 1.4
        path = tensor.geodesic(shell_chart, x0, x0 / np.linalg.norm(x0),
                               1.2, fd, n_steps=2048)
        assert path.alive[0]
        assert path.drift[0] < 1e-6

    def test_leaves_domain_flagged(self, fd):
        ch = conformal_2d_chart(
            lambda r2: np.ones_like(r2),
            domain=lambda pts: np.einsum("bi,bi->b", pts, pts) < 1.0)
        path = tensor.geodesic(ch, [0.0, 0.0], [1.0, 0.0], 3.0, fd,
                               n_steps=256)
        assert not path.alive[0]


class TestResidualOperators:
    def test_euclidean_clean(self, fd):
        ch = euclidean_chart(2)
        x = np.array([0.3, -0.2, 0.5, 0.1])
        kr = tensor.kahler_residuals(ch, x, fd)
        assert kr.worst() < 1e-12
        km = tensor.killing_residual(ch, x, fd)
        assert km.worst() < 1e-10

    def test_shell_clean(self, fd, shell_chart):
        for x in models.sample_points(shell_chart, 5, seed=8):
            assert tensor.kahler_residuals(shell_chart, x, fd).worst() < 1e-6
            assert tensor.killing_residual(shell_chart, x, fd).worst() < 1e-6

    def test_perturbed_metric_detected(self, fd):
        base = euclidean_chart(2)

        def bumped(pts):
            g = np.asarray(base.g(pts)).copy()
            g[:, 0, 0] += 0.01
            return g

        ch = tensor.ChartMetric(n=4, g=bumped, J=base.J, phi=base.phi,
                                domain=base.domain, meta={})
        kr = tensor.kahler_residuals(ch, np.array([0.3, -0.2, 0.5, 0.1]), fd)
        assert kr.hermitian_res > 5e-3

    def test_perturbed_potential_detected(self, fd):
        base = euclidean_chart(2)

        def phi(pts):
            pts = np.asarray(pts, dtype=float)
            return np.einsum("bi,bi->b", pts, pts) + 0.01 * pts[:, 0] ** 3

        km = tensor.killing_residual(base, np.array([0.5, -0.2, 0.4, 0.1]),
                                     fd, phi_fn=phi)
        assert km.sym_nabla_u_res > 1e-4

    def test_stencil_out_of_domain(self, fd):
        ch = conformal_2d_chart(
            lambda r2: np.ones_like(r2),
            domain=lambda pts: np.einsum("bi,bi->b", pts, pts) < 1.0)
        with pytest.raises(StencilOutOfDomain):
            tensor.curvature(ch, [0.9999, 0.0], fd)
