"""Shared fixtures: default FD configuration and the four model charts."""

import numpy as np
import pytest

from skrp import models, profiles, tensor


@pytest.fixture(scope="session")
def fd():
    return tensor.FDConfig()


@pytest.fixture(scope="session")
def quadratic_profile():
    return profiles.make_profile(profiles.Quadratic(K=1.0, phi0=1.0),
                                 (-1.0, 1.0))


@pytest.fixture(scope="session")
def shell_chart(quadratic_profile):
    spec = models.ShellSpec(m=2, profile=quadratic_profile, a=1.0, eps=1,
                            c=-2.0)
    return models.build_shell(spec)


@pytest.fixture(scope="session")
def annulus_chart(quadratic_profile):
    return models.build_annulus(
        models.AnnulusSpec(profile=quadratic_profile, a=-1.0))


@pytest.fixture(scope="session")
def sphere_model():
    return models.build_sphere(models.SphereSpec(K=4.0, phi0=1.0))


@pytest.fixture(scope="session")
def product_chart():
    return models.build_product(models.ProductSpec(K=1.0, t=1.0))


def euclidean_chart(m: int, phi="norm2"):
    """Flat chart on R^(2m) with the standard complex structure."""
    n = 2 * m
    if phi == "norm2":
        phi_fn = lambda pts: np.einsum("bi,bi->b", pts, pts)
    elif phi == "linear":
        phi_fn = lambda pts: pts[:, 0]
    else:
        phi_fn = phi
    return tensor.ChartMetric(
        n=n,
        g=lambda pts: np.broadcast_to(np.eye(n), (len(pts), n, n)).copy(),
        J=models.standard_J(m),
        phi=phi_fn,
        domain=lambda pts: np.ones(len(pts), dtype=bool),
        meta={"m": m, "model": "euclidean"})
