"""Model charts: shells, annuli, the sphere, the product, ball extension,
and the tautological-bundle connection."""

import math

import numpy as np
import pytest

from skrp import models, reparam, tensor
from skrp.errors import SpecInvariantViolated, WrongEndpoint


class TestShell:
    def test_vertical_plane_metric(self, shell_chart, quadratic_profile):
        # g(v, v) = g(u, u) = Q and g(v, u) = 0 for v = a x, u = a J x.
        rng = np.random.default_rng(100)
        pts = models.sample_points(shell_chart, 100, seed=100)
        a = shell_chart.meta["a"]
        g = np.asarray(shell_chart.g(pts))
        phi = np.asarray(shell_chart.phi(pts))
        Q = np.asarray(quadratic_profile.q(phi))
        v = a * pts
        u = (shell_chart.J @ (a * pts).T).T
        gvv = np.einsum("bi,bij,bj->b", v, g, v)
        guu = np.einsum("bi,bij,bj->b", u, g, u)
        gvu = np.einsum("bi,bij,bj->b", v, g, u)
        assert np.max(np.abs(gvv - Q)) < 1e-9
        assert np.max(np.abs(guu - Q)) < 1e-9
        assert np.max(np.abs(gvu)) < 1e-9

    def test_fd_q_matches_profile(self, shell_chart, quadratic_profile, fd):
        pts = models.sample_points(shell_chart, 20, seed=101)
        for x in pts:
            pot = tensor.potential_derivatives(shell_chart, x, fd)
            phi = float(shell_chart.phi(x[None, :])[0])
            assert abs(pot.Q - float(quadratic_profile.q(phi))) < 1e-6

    def test_horizontal_block_is_scaled_projective_metric(self, shell_chart):
        # On H the metric is 2|phi-c|/|a| times Euclid/r^2 (the pullback of
        # the projective base metric scaled by the norm-squared function).
        rng = np.random.default_rng(7)
        pts = models.sample_points(shell_chart, 50, seed=7)
        a = shell_chart.meta["a"]
        c = shell_chart.meta["c"]
        g = np.asarray(shell_chart.g(pts))
        phi = np.asarray(shell_chart.phi(pts))
        J = shell_chart.J
        for k in range(len(pts)):
            x = pts[k]
            r2 = float(x @ x)
            # Any vector Euclid-orthogonal to both x and Jx lies in H.
            w = rng.normal(size=4)
            w -= (w @ x) * x / r2
            jx = J @ x
            w -= (w @ jx) * jx / r2
            expect = 2.0 * abs(phi[k] - c) / (abs(a) * r2) * float(w @ w)
            got = float(w @ g[k] @ w)
            assert abs(got - expect) < 1e-8 * max(1.0, abs(expect))

    def test_metric_conditioning(self, shell_chart):
        pts = models.sample_points(shell_chart, 100, seed=9)
        eig = np.linalg.eigvalsh(np.asarray(shell_chart.g(pts)))
        assert np.min(eig) > 1e-6
        assert np.max(eig) < 1e6

    def test_spec_invariants(self, quadratic_profile):
        with pytest.raises(SpecInvariantViolated):
            models.ShellSpec(m=1, profile=quadratic_profile, a=1.0, eps=1,
                             c=-2.0)
        with pytest.raises(SpecInvariantViolated):
            models.ShellSpec(m=2, profile=quadratic_profile, a=-1.0, eps=1,
                             c=-2.0)
        with pytest.raises(SpecInvariantViolated):
            models.ShellSpec(m=2, profile=quadratic_profile, a=1.0, eps=1,
                             c=0.0)   # c inside the phi window


class TestAnnulus:
    def test_conformal_factor_positive(self, annulus_chart):
        pts = models.sample_points(annulus_chart, 1000, seed=2)
        g = np.asarray(annulus_chart.g(pts))
        assert np.all(g[:, 0, 0] > 0)
        assert np.max(np.abs(g[:, 0, 1])) == 0.0
        assert np.max(np.abs(g[:, 0, 0] - g[:, 1, 1])) == 0.0

    def test_inversion_isometry(self, annulus_chart, quadratic_profile):
        dual = models.build_annulus(models.AnnulusSpec(
            profile=quadratic_profile, a=-annulus_chart.meta["a"],
            phi_window=annulus_chart.meta["phi_window"]))
        pts = models.sample_points(annulus_chart, 100, seed=3)
        star = models.inversion_point(pts)
        g = np.asarray(annulus_chart.g(pts))
        worst_g = worst_phi = 0.0
        for k in range(len(pts)):
            jac = models.inversion_jacobian(pts[k])
            gs = np.asarray(dual.g(star[k][None, :]))[0]
            pull = jac.T @ gs @ jac
            worst_g = max(worst_g, np.max(np.abs(pull - g[k]))
                          / np.max(np.abs(g[k])))
            worst_phi = max(worst_phi, abs(
                float(annulus_chart.phi(pts[k][None, :])[0])
                - float(dual.phi(star[k][None, :])[0])))
        assert worst_g < 1e-10
        assert worst_phi < 1e-9


class TestSphere:
    def test_gaussian_curvature(self, sphere_model, fd):
        K = sphere_model.spec.K
        rng = np.random.default_rng(4)
        radii = np.concatenate([
            np.exp(rng.uniform(math.log(1e-3), math.log(1e-2), 10)),
            np.exp(rng.uniform(math.log(0.05), math.log(2.0), 10))])
        th = rng.uniform(0, 2 * math.pi, 20)
        pts = np.column_stack([radii * np.cos(th), radii * np.sin(th)])
        for x in pts:
            curv = tensor.curvature(sphere_model.chart, x, fd)
            assert curv.scalar / 2.0 == pytest.approx(K, rel=1e-5)

    def test_chi_isometry(self, sphere_model):
        # chi pullback of (1/K) x unit-sphere metric equals the chart metric.
        K = sphere_model.spec.K
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(50, 2)) * 0.8
        h = 1e-6
        for y in pts:
            dchi = np.zeros((3, 2))
            for i in range(2):
                e = np.eye(2)[i]
                dchi[:, i] = (sphere_model.chi((y + h * e)[None, :])[0]
                              - sphere_model.chi((y - h * e)[None, :])[0]) \
                    / (2 * h)
            pull = dchi.T @ dchi / K
            g = np.asarray(sphere_model.chart.g(y[None, :]))[0]
            assert np.max(np.abs(pull - g)) < 1e-7

    def test_chi_pole(self, sphere_model):
        assert np.allclose(sphere_model.chi(np.zeros((1, 2)))[0],
                           [0.0, 0.0, 1.0])

    def test_rotation_invariance(self, sphere_model):
        theta = 1.234
        R = np.array([[math.cos(theta), -math.sin(theta)],
                      [math.sin(theta), math.cos(theta)]])
        pts = np.random.default_rng(6).normal(size=(20, 2))
        g1 = np.asarray(sphere_model.chart.g(pts))
        g2 = np.asarray(sphere_model.chart.g(pts @ R.T))
        pulled = np.einsum("ki,bkl,lj->bij", R, g2, R)
        assert np.max(np.abs(pulled - g1)) < 1e-10


class TestBallExtension:
    def test_limit_matches_boundary_q0(self, quadratic_profile):
        a, c = -1.0, 1.0
        table = reparam.build_reparam(quadratic_profile, a)
        c1_0, c2_0 = models.ball_extension_coeffs(quadratic_profile, a, c,
                                                  0.0, table)
        bl = reparam.boundary_limits(table, "hi")
        assert c2_0 == pytest.approx(bl.q0 / a ** 2, rel=1e-6)
        assert c2_0 > 0

    def test_c1_finite(self, quadratic_profile):
        a, c = -1.0, 1.0
        table = reparam.build_reparam(quadratic_profile, a)
        c1_a, _ = models.ball_extension_coeffs(quadratic_profile, a, c,
                                               1e-3, table)
        c1_b, _ = models.ball_extension_coeffs(quadratic_profile, a, c,
                                               1e-4, table)
        assert abs(c1_a - c1_b) <= 0.1 * max(abs(c1_a), abs(c1_b), 1e-12)

    def test_reconstructed_metric_positive(self, quadratic_profile):
        a, c = -1.0, 1.0
        table = reparam.build_reparam(quadratic_profile, a)
        x = np.array([1e-3, 0.0])
        g = models.ball_metric(quadratic_profile, a, c, x, table)
        assert np.all(np.linalg.eigvalsh(g) > 0)

    def test_wrong_endpoint(self, quadratic_profile):
        with pytest.raises(WrongEndpoint):
            models.ball_extension_coeffs(quadratic_profile, -1.0, 0.5, 0.1)
        with pytest.raises(WrongEndpoint):
            # Slope at phi = -1 is +2, not 2a = -2.
            models.ball_extension_coeffs(quadratic_profile, -1.0, -1.0, 0.1)


class TestProduct:
    def test_q_closed_form(self, product_chart, fd):
        K = product_chart.meta["K"]
        t = product_chart.meta["t"]
        pts = models.sample_points(product_chart, 20, seed=8)
        for x in pts:
            pot = tensor.potential_derivatives(product_chart, x, fd)
            phi = float(product_chart.phi(x[None, :])[0])
            assert abs(pot.Q - K * (t ** 2 - phi ** 2)) < 1e-6

    def test_base_ricci(self, product_chart, fd):
        K = product_chart.meta["K"]
        pts = models.sample_points(product_chart, 5, seed=9)
        for x in pts:
            curv = tensor.curvature(product_chart, x, fd)
            g = np.asarray(product_chart.g(x[None, :]))[0]
            base = curv.ricci[:2, :2]
            assert np.max(np.abs(base + K * g[:2, :2])) < 1e-5 * np.max(
                np.abs(g[:2, :2]))

    def test_base_hessian_vanishes(self, product_chart, fd):
        pts = models.sample_points(product_chart, 5, seed=10)
        for x in pts:
            pot = tensor.potential_derivatives(product_chart, x, fd)
            assert np.max(np.abs(pot.hess_phi[:2, :2])) < 1e-7

    def test_mixed_block_exactly_zero(self, product_chart):
        pts = models.sample_points(product_chart, 50, seed=11)
        g = np.asarray(product_chart.g(pts))
        assert np.max(np.abs(g[:, :2, 2:])) == 0.0


class TestTautologicalConnection:
    def test_curvature_is_minus_two_fs(self, fd):
        rng = np.random.default_rng(12)
        pts = rng.normal(size=(100, 2))
        for y in pts:
            data = models.tautological_connection(y, fd)
            assert abs(data.omega.real + 2.0 * data.omega_fs) < 1e-6
            assert abs(data.omega.imag) < 1e-8

    def test_connection_form_vanishes_at_origin(self, fd):
        data = models.tautological_connection([0.0, 0.0], fd)
        assert abs(data.gamma[0]) == 0.0
        assert abs(data.gamma[1]) == 0.0

    def test_connection_form_closed_form(self, fd):
        y = np.array([0.4, -0.3])
        data = models.tautological_connection(y, fd)
        z = complex(y[0], y[1])
        expect = z.conjugate() / (1.0 + abs(z) ** 2)
        assert abs(data.gamma[0] - expect) < 1e-14


class TestModelResidualSuites:
    @pytest.mark.parametrize("which", ["shell", "annulus", "sphere",
                                       "product"])
    def test_kahler_killing_clean(self, which, fd, shell_chart,
                                  annulus_chart, sphere_model,
                                  product_chart):
        chart = {"shell": shell_chart, "annulus": annulus_chart,
                 "sphere": sphere_model.chart,
                 "product": product_chart}[which]
        pts = models.sample_points(chart, 15, seed=13)
        for x in pts:
            assert tensor.kahler_residuals(chart, x, fd).worst() < 1e-6
            assert tensor.killing_residual(chart, x, fd).worst() < 1e-6
