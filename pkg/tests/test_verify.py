"""Verification suites: eigenstructure, identities, conformal Einstein,
soliton, normal geodesics, classification, and scaling covariance."""

import numpy as np
import pytest

from skrp import models, profiles, tensor, verify
from skrp.errors import PhiNearZero
from conftest import euclidean_chart


@pytest.fixture(scope="module")
def shell_points(shell_chart):
    return models.sample_points(shell_chart, 15, seed=50)


@pytest.fixture(scope="module")
def matched_type_c():
    """TypeC shell matched to its projective base: kappa = eps m A / c with
    kappa = 2 m |a| forces A = 2 a c (here a = 1, c = 1, so A = 2)."""
    m, eps, c, a = 2, 1, 1.0, 1.0
    prof = profiles.make_profile(
        profiles.TypeC(m=m, c=c, A=2.0 * a * c, B=-0.4, C=0.1),
        (1.35, 2.55))
    chart = models.build_shell(models.ShellSpec(
        m=m, profile=prof, a=a, eps=eps, c=c, phi_window=(1.5, 2.4)))
    return chart


class TestEigenstructure:
    def test_shell_blocks(self, shell_chart, shell_points, fd):
        rep = verify.skrp_report(shell_chart, shell_points, fd)
        assert rep.worst() < 1e-5
        assert rep.eps_consistent

    def test_product_sigma_zero(self, product_chart, fd):
        pts = models.sample_points(product_chart, 10, seed=51)
        rep = verify.skrp_report(product_chart, pts, fd)
        assert rep.worst() < 1e-5
        assert np.max(np.abs(rep.sigma)) < 1e-7

    def test_flat_norm_squared(self, fd):
        ch = euclidean_chart(2)
        pts = np.array([[0.3, -0.2, 0.5, 0.1], [0.1, 0.4, -0.3, 0.2]])
        rep = verify.skrp_report(ch, pts, fd)
        assert np.max(np.abs(rep.sigma - 2.0)) < 1e-7
        assert np.max(np.abs(rep.tau - 2.0)) < 1e-7
        assert np.max(np.abs(rep.lam)) < 1e-7
        assert np.max(np.abs(rep.mu)) < 1e-7


class TestIdentities:
    def test_shell(self, shell_chart, shell_points, fd):
        rep = verify.identity_report(shell_chart, shell_points, fd)
        assert rep.worst() < 1e-5
        assert rep.sigma_ratio_res is not None

    def test_product_ratio_vacuous(self, product_chart, fd):
        pts = models.sample_points(product_chart, 8, seed=52)
        rep = verify.identity_report(product_chart, pts, fd)
        assert rep.worst() < 1e-5
        assert rep.sigma_ratio_res is None
        assert "sigma_ratio" in rep.vacuous

    def test_injected_offset_detected(self, shell_chart, shell_points, fd):
        # Shifting tau by 0.01 breaks the trace identity by about 0.02.
        rep = verify.skrp_report(shell_chart, shell_points[:4], fd)
        m = shell_chart.meta["m"]
        bad = rep.Y - 2.0 * (rep.tau + 0.01) - 2.0 * (m - 1) * rep.sigma
        assert np.all(np.abs(bad) > 0.019)
        good = rep.Y - 2.0 * rep.tau - 2.0 * (m - 1) * rep.sigma
        assert np.max(np.abs(good)) < 1e-6


class TestIdentityPropertySweep:
    def test_random_polynomial_profiles(self, fd):
        # Identities hold for every positive profile, not just the
        # closed-form families: sweep random polynomial profiles through
        # the shell construction.
        from numpy.polynomial import polynomial as npoly
        rng = np.random.default_rng(777)
        for _ in range(8):
            coeffs = rng.normal(size=5)
            grid = np.linspace(0.45, 2.05, 300)
            vals = npoly.polyval(grid, coeffs)
            coeffs[0] += 0.5 - vals.min()
            peak = float(npoly.polyval(grid, coeffs).max())
            prof = profiles.make_profile(
                profiles.Polynomial(coeffs=tuple(coeffs * (1.5 / peak))),
                (0.45, 2.05))
            chart = models.build_shell(models.ShellSpec(
                m=2, profile=prof, a=1.0, eps=1, c=0.0,
                phi_window=(0.55, 1.95)))
            pts = models.sample_points(chart, 20,
                                       seed=int(rng.integers(2 ** 31)))
            rep = verify.identity_report(chart, pts, fd)
            assert rep.worst() < 1e-5
            assert rep.sigma_ratio_res < 1e-5


class TestConformalEinstein:
    def test_product(self, product_chart, fd):
        pts = models.sample_points(product_chart, 12, seed=53)
        rep = verify.conformal_einstein_report(product_chart, pts, fd)
        assert rep.einstein_res < 1e-4
        assert rep.lambda_spread < 1e-4
        assert rep.wedge_res < 1e-6

    def test_matched_type_c_shell(self, matched_type_c, fd):
        pts = models.sample_points(matched_type_c, 12, seed=54)
        rep = verify.conformal_einstein_report(matched_type_c, pts, fd)
        assert rep.einstein_res < 1e-4
        assert rep.lambda_spread < 1e-4
        assert rep.wedge_res < 1e-6

    def test_generic_profile_fails(self, fd):
        prof = profiles.make_profile(
            profiles.Polynomial(coeffs=(0.8, 0.05, 0.3, -0.07)),
            (1.35, 2.55))
        chart = models.build_shell(models.ShellSpec(
            m=2, profile=prof, a=1.0, eps=1, c=1.0, phi_window=(1.5, 2.4)))
        pts = models.sample_points(chart, 8, seed=55)
        rep = verify.conformal_einstein_report(chart, pts, fd)
        assert rep.einstein_res > 1e-2

    def test_phi_near_zero_guard(self, product_chart, fd):
        pts = np.array([[0.1, 0.0, 1.0, 0.0]])   # |w| = 1 gives phi = 0
        with pytest.raises(PhiNearZero):
            verify.conformal_einstein_report(product_chart, pts, fd)


@pytest.fixture(scope="module")
def pipeline():
    m, eps, c, a = 2, 1, 0.0, 1.0
    p, s0 = 0.5, 0.3
    kappa = 2.0 * m * abs(a)
    prof = profiles.soliton_profile(m=m, p=p, s0=s0, kappa=kappa,
                                    eps=eps, c=c, anchor=(1.0, 0.5),
                                    rng=(0.4, 2.2))
    chart = models.build_shell(models.ShellSpec(
        m=m, profile=prof, a=a, eps=eps, c=c))
    return chart, p, s0


class TestSoliton:
    def test_matched_residual(self, pipeline, fd):
        chart, p, s0 = pipeline
        pts = models.sample_points(chart, 12, seed=56)
        assert verify.soliton_report(chart, p, s0, pts, fd) < 1e-4

    def test_sensitivity(self, pipeline, fd):
        chart, p, s0 = pipeline
        pts = models.sample_points(chart, 6, seed=57)
        base = verify.soliton_report(chart, p, s0, pts, fd)
        off = verify.soliton_report(chart, 1.01 * p, s0, pts, fd)
        assert off >= 10.0 * base

    def test_flat_degenerate(self, fd):
        ch = euclidean_chart(2)
        pts = np.array([[0.3, -0.2, 0.5, 0.1]])
        assert verify.soliton_report(ch, 0.7, 2.0, pts, fd) < 1e-9


class TestNormalGeodesics:
    def test_sphere(self, sphere_model, fd):
        rep = verify.sphere_normal_geodesics(sphere_model, fd)
        assert rep.dphids_res < 1e-5
        assert rep.gauss_res < 1e-4
        assert rep.distance_vs_L < 1e-4

    def test_shell(self, shell_chart, fd):
        rep = verify.shell_normal_geodesics(shell_chart, fd)
        assert rep.dphids_res < 1e-5
        assert rep.gauss_res < 1e-4
        assert rep.distance_vs_L is None


class TestExtendedCurvatureOracle:
    def test_shell(self, shell_chart, fd):
        pts = models.sample_points(shell_chart, 6, seed=60)
        res = verify.vertical_curvature_identity(shell_chart, pts, fd)
        assert res < 1e-6

    def test_product_vanishing_sigma(self, product_chart, fd):
        # sigma = 0 makes the right side vanish: the gradient direction is
        # flat against orthogonal-block pairs.
        pts = models.sample_points(product_chart, 4, seed=61)
        res = verify.vertical_curvature_identity(product_chart, pts, fd)
        assert res < 1e-6


class TestClassification:
    def test_product_is_type_a(self, product_chart):
        assert verify.classify_model(product_chart).tag == "A"

    def test_shell_c_outside_is_c1(self, shell_chart):
        tag = verify.classify_model(shell_chart)
        assert tag.tag == "C1" and not tag.excluded

    def test_c_inside_is_c2_with_note(self, matched_type_c,
                                      quadratic_profile):
        tag = profiles.classify_type(1, 0.5, quadratic_profile.interval)
        assert tag.tag == "C2"
        assert tag.note


class TestDeterminismAndScaling:
    def test_reports_reproducible(self, shell_chart, fd):
        pts = models.sample_points(shell_chart, 6, seed=58)
        r1 = verify.skrp_report(shell_chart, pts, fd)
        r2 = verify.skrp_report(shell_chart, pts, fd)
        assert np.array_equal(r1.sigma, r2.sigma)
        assert np.array_equal(r1.tau, r2.tau)
        assert r1.worst() == r2.worst()

    def test_metric_scaling_covariance(self, shell_chart, fd):
        # Multiplying g by lambda leaves Christoffels and classification
        # unchanged and scales the eigenvalues lam, mu by 1/lambda.
        lam_scale = 4.0

        def g_scaled(pts):
            return lam_scale * np.asarray(shell_chart.g(pts))

        scaled = tensor.ChartMetric(n=shell_chart.n, g=g_scaled,
                                    J=shell_chart.J, phi=shell_chart.phi,
                                    domain=shell_chart.domain,
                                    meta=dict(shell_chart.meta))
        pts = models.sample_points(shell_chart, 4, seed=59)
        for x in pts:
            g1 = tensor.connection_coefficients(shell_chart, x, fd)
            g2 = tensor.connection_coefficients(scaled, x, fd)
            assert np.max(np.abs(g1 - g2)) < 1e-9
        r1 = verify.skrp_report(shell_chart, pts, fd)
        r2 = verify.skrp_report(scaled, pts, fd)
        assert np.max(np.abs(r2.lam - r1.lam / lam_scale)) < 1e-7
        assert np.max(np.abs(r2.mu - r1.mu / lam_scale)) < 1e-7
        assert (verify.classify_model(scaled).tag
                == verify.classify_model(shell_chart).tag)
