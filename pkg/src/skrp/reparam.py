"""Reparameterizations between phi, the radial coordinate r, and arclength s.

The radial coordinate solves d(log r)/d(phi) = a/Q for a nonzero constant a,
so log r splits into exact logarithmic terms at simple roots of Q plus a
smooth remainder integral.  Tables built here carry that split explicitly,
which keeps r(phi) accurate arbitrarily close to the roots, where r tends to
0 or infinity.  Arclength uses ds/dphi = sgn(a)/sqrt(Q), regularized at root
endpoints by the substitution w = sqrt(phi - endpoint).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import (
    AnchorOutOfRange,
    BadParams,
    NonPositiveQ,
    SingularEndpoint,
    TableRangeExceeded,
    WrongEndpoint,
)
from .profiles import Profile

R_SENTINEL = 1.0e12
N_TABLE = 1024
N_SMOOTH = 2048
ENDPOINT_CLIP = 1.0e-6


class _LogRadius:
    """log r(phi) = p_lo log(phi - lo) + p_hi log(hi - phi) + R(phi) + const.

    p_e = a / Q'(endpoint) when the endpoint is a simple root of Q; the
    corresponding log term is absent otherwise.  R is the integral of the
    smooth remainder of a/Q, held as the antiderivative of a spline through
    Chebyshev-clustered samples, so r(phi) stays accurate arbitrarily close
    to the roots.
    """

    def __init__(self, profile: Profile, a: float):
        self.profile = profile
        self.a = float(a)
        lo, hi = profile.interval
        self.lo, self.hi = lo, hi
        length = hi - lo
        s_lo, s_hi = profile.endpoint_slopes
        self.root_lo = s_lo is not None
        self.root_hi = s_hi is not None
        self.p_lo = a / s_lo if self.root_lo else 0.0
        self.p_hi = a / s_hi if self.root_hi else 0.0
        self._d_switch = 1.0e-4 * length
        self._series = {}
        if self.root_lo:
            self._series[lo] = self._root_series(lo, +1.0)
        if self.root_hi:
            self._series[hi] = self._root_series(hi, -1.0)
        j = np.arange(N_SMOOTH + 1)
        x = lo + 0.5 * length * (1.0 - np.cos(np.pi * j / N_SMOOTH))
        y = self._remainder(x)
        self._R = CubicSpline(x, y).antiderivative()
        self.const = 0.0

    def _root_series(self, phi0: float, inward: float):
        """Taylor coefficients of a/Q - p/(phi - phi0) at a simple root.

        With Q = s d + q2 d^2/2 + q3 d^3/6 for d = phi - phi0,
        a/Q - p/d = -p q2/(2s) + p [(q2/(2s))^2 - q3/(6s)] d + O(d^2).
        q3 is estimated by a one-sided difference of the exact d2q evaluator.
        """
        s = float(self.profile.dq(phi0))
        q2 = float(self.profile.d2q(phi0))
        h = inward * 1.0e-4 * (self.hi - self.lo)
        q3 = (-3.0 * float(self.profile.d2q(phi0))
              + 4.0 * float(self.profile.d2q(phi0 + h))
              - float(self.profile.d2q(phi0 + 2 * h))) / (2.0 * h)
        p = self.a / s
        c0 = -p * q2 / (2.0 * s)
        c1 = p * ((q2 / (2.0 * s)) ** 2 - q3 / (6.0 * s))
        return c0, c1

    def _singular(self, phi, skip: Optional[float] = None):
        """Sum of singular terms p_e/(phi - e), optionally skipping one end."""
        out = np.zeros_like(phi)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.root_lo and skip != self.lo:
                out = out + self.p_lo / (phi - self.lo)
            if self.root_hi and skip != self.hi:
                out = out + self.p_hi / (phi - self.hi)
        return out

    def _remainder(self, phi):
        """a/Q minus all singular terms, series-switched near the roots."""
        phi = np.asarray(phi, dtype=float)
        q = np.asarray(self.profile.q(phi), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = self.a / q - self._singular(phi)
        for phi0, (c0, c1) in self._series.items():
            d = phi - phi0
            near = np.abs(d) < self._d_switch
            if np.any(near):
                series_val = c0 + c1 * d - self._singular(phi, skip=phi0)
                val = np.where(near, series_val, val)
        return val

    def value(self, phi):
        phi = np.asarray(phi, dtype=float)
        out = self._R(phi) + self.const
        if self.root_lo:
            out = out + self.p_lo * np.log(phi - self.lo)
        if self.root_hi:
            out = out + self.p_hi * np.log(self.hi - phi)
        return out

    def derivative(self, phi):
        """d(log r)/dphi = a/Q from the profile directly."""
        return self.a / np.asarray(self.profile.q(phi), dtype=float)


class _Arclength:
    """Cumulative arclength s(phi) = int dpsi / sqrt(Q) from the lo endpoint.

    Each half of the interval is integrated in the substituted variable
    w = sqrt(|phi - endpoint|), which removes the inverse-square-root
    singularity at simple roots; the cumulants are antiderivatives of
    splines over uniform w-grids.
    """

    def __init__(self, profile: Profile, n: int = 4097):
        lo, hi = profile.interval
        mid = 0.5 * (lo + hi)
        self.lo, self.hi, self.mid = lo, hi, mid
        self.profile = profile
        self._left = self._half(lo, mid, +1.0, n)
        self._right = self._half(hi, mid, -1.0, n)
        self.total = float(self._left[1] + self._right[1])

    def _half(self, end: float, mid: float, sign: float, n: int):
        w_max = math.sqrt(abs(mid - end))
        w = np.linspace(0.0, w_max, n)
        phi = end + sign * w ** 2
        q = np.asarray(self.profile.q(phi), dtype=float)
        integrand = np.empty_like(w)
        integrand[1:] = 2.0 * w[1:] / np.sqrt(q[1:])
        slope = self.profile.dq(end)
        q_end = float(self.profile.q(end))
        if q_end > 1e-9 * max(self.profile.q_scale, 1.0):
            integrand[0] = 0.0
        else:
            integrand[0] = 2.0 / math.sqrt(abs(float(slope)))
        cum = CubicSpline(w, integrand).antiderivative()
        return cum, float(cum(w_max))

    def from_lo(self, phi):
        """s measured from the lo endpoint, increasing with phi."""
        phi = np.asarray(phi, dtype=float)
        left_cum, left_total = self._left
        right_cum, right_total = self._right
        w_left = np.sqrt(np.clip(phi - self.lo, 0.0, None))
        w_right = np.sqrt(np.clip(self.hi - phi, 0.0, None))
        left_val = left_cum(w_left)
        right_val = left_total + (right_total - right_cum(w_right))
        return np.where(phi <= self.mid, left_val, right_val)


@dataclass(frozen=True)
class ReparamTable:
    """Monotone correspondence between phi, r, and arclength s.

    Nodes are stored in increasing-r order (equivalently increasing s, with
    s = 0 at the small-r end).  ``r_unbounded`` marks tables whose radial
    coordinate exceeds R_SENTINEL before the far endpoint, the finite
    stand-in for r -> infinity.
    """

    profile: Profile
    a: float
    anchor: tuple[float, float]
    phi_nodes: np.ndarray = field(repr=False)
    r_nodes: np.ndarray = field(repr=False)
    s_nodes: np.ndarray = field(repr=False)
    L: float
    r_unbounded: bool
    _logr: _LogRadius = field(repr=False)
    _arc: _Arclength = field(repr=False)

    # -- radial coordinate ---------------------------------------------------

    def log_r(self, phi):
        return self._logr.value(phi)

    def r_of_phi(self, phi):
        out = np.exp(np.minimum(self._logr.value(phi), math.log(R_SENTINEL)))
        if np.isscalar(phi):
            return float(out)
        return out

    def phi_of_r(self, r):
        """Inverse map by monotone root finding on log r."""
        scalar = np.isscalar(r)
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(r_arr <= 0):
            raise TableRangeExceeded("r must be positive")
        target = np.log(r_arr)
        lo, hi = self.profile.interval
        pad = 1e-13 * (hi - lo)
        a_br, b_br = lo + pad, hi - pad
        va, vb = float(self._logr.value(a_br)), float(self._logr.value(b_br))
        out = np.empty_like(target)
        for i, t in enumerate(target):
            if (t - va) * (t - vb) > 0:
                raise TableRangeExceeded(
                    f"r = {r_arr[i]} outside the table range")
            out[i] = brentq(lambda p: float(self._logr.value(p)) - t,
                            a_br, b_br, xtol=1e-15 * max(1.0, abs(hi), abs(lo)),
                            rtol=8.9e-16)
        return float(out[0]) if scalar else out

    def dense_phi_of_logr(self, logr_lo: float, logr_hi: float,
                          n: int = 8192) -> CubicSpline:
        """Smooth dense interpolant phi(log r) over a log-radius window.

        Nodes are uniform in log r; each is polished by vectorized Newton
        iterations on log r(phi) (whose derivative a/Q is exact), so the
        interpolant is accurate to near machine precision and safe to
        finite-difference.
        """
        lo, hi = self.profile.interval
        pad = 1e-12 * (hi - lo)
        grid = np.linspace(lo + pad, hi - pad, 4 * n)
        logr_grid = np.asarray(self._logr.value(grid))
        order = np.argsort(logr_grid)
        logr_sorted = logr_grid[order]
        phi_sorted = grid[order]
        targets = np.linspace(logr_lo, logr_hi, n)
        if targets[0] < logr_sorted[0] or targets[-1] > logr_sorted[-1]:
            raise TableRangeExceeded("log r window outside the table range")
        phi = np.interp(targets, logr_sorted, phi_sorted)
        for _ in range(4):
            f = np.asarray(self._logr.value(phi)) - targets
            df = np.asarray(self._logr.derivative(phi))
            phi = np.clip(phi - f / df, lo + pad, hi - pad)
        return CubicSpline(targets, phi)

    # -- arclength -------------------------------------------------------...

    def s_of_phi(self, phi):
        base = self._arc.from_lo(phi)
        if self.a > 0:
            out = base
        else:
            out = self._arc.total - base
        if np.isscalar(phi):
            return float(out)
        return out


def build_reparam(profile: Profile, a: float,
                  anchor: Optional[tuple[float, float]] = None) -> ReparamTable:
    """Build the phi <-> r <-> s table for a profile and constant a != 0.

    The radial ODE d(log r)/dphi = a/Q is integrated on the open interval
    (split exactly at root endpoints); the anchor (phi_a, r_a) fixes the
    constant factor in r.  Nodes are cosine-clustered toward the endpoints,
    clipped 1e-6 of the interval length away from them.
    """
    if a == 0.0:
        raise BadParams("build_reparam requires a != 0")
    lo, hi = profile.interval
    if anchor is None:
        anchor = (0.5 * (lo + hi), 1.0)
    phi_a, r_a = float(anchor[0]), float(anchor[1])
    if not lo < phi_a < hi:
        raise AnchorOutOfRange(f"anchor phi = {phi_a} not interior to "
                               f"({lo}, {hi})")
    if r_a <= 0:
        raise AnchorOutOfRange(f"anchor r = {r_a} must be positive")
    if float(profile.q(phi_a)) <= 0.0:
        raise NonPositiveQ(f"Q(phi_a) <= 0 at {phi_a}")

    core = _LogRadius(profile, a)
    core.const = math.log(r_a) - float(core.value(phi_a))
    arc = _Arclength(profile)

    length = hi - lo
    delta = ENDPOINT_CLIP * length
    j = np.arange(N_TABLE)
    phi_nodes = (lo + delta) + 0.5 * (length - 2 * delta) * (
        1.0 - np.cos(np.pi * j / (N_TABLE - 1)))
    logr = np.asarray(core.value(phi_nodes))
    # r -> infinity at a root endpoint whose log-exponent a/Q' is negative.
    unbounded = bool(np.any(logr > math.log(R_SENTINEL))
                     or (core.root_lo and core.p_lo < 0)
                     or (core.root_hi and core.p_hi < 0))
    r_nodes = np.exp(np.minimum(logr, math.log(R_SENTINEL)))
    s_from_lo = np.asarray(arc.from_lo(phi_nodes))
    if a > 0:
        s_nodes = s_from_lo
    else:
        phi_nodes = phi_nodes[::-1]
        r_nodes = r_nodes[::-1]
        s_nodes = arc.total - s_from_lo[::-1]
    return ReparamTable(profile=profile, a=a, anchor=(phi_a, r_a),
                        phi_nodes=phi_nodes, r_nodes=r_nodes, s_nodes=s_nodes,
                        L=float(arc.total), r_unbounded=unbounded,
                        _logr=core, _arc=arc)


def dual_table(table: ReparamTable) -> ReparamTable:
    """The dual table with r* = 1/r and a* = -a, same phi and s geometry.

    Realized exactly: the log-radius split negates term by term, and the
    anchor becomes (phi_a, 1/r_a), so r*(phi) = 1/r(phi) at every phi.
    """
    phi_a, r_a = table.anchor
    return build_reparam(table.profile, -table.a, (phi_a, 1.0 / r_a))


def critical_distance(profile: Profile, rel_tol: float = 1.0e-9) -> float:
    """The arclength integral L = int dphi / sqrt(Q) over the interval.

    Requires simple roots at both endpoints; the integral is split at the
    midpoint and each half is regularized by w = sqrt(|phi - endpoint|)
    before adaptive quadrature.
    """
    lo, hi = profile.interval
    for which, end in ((0, lo), (1, hi)):
        slope = profile.endpoint_slopes[which]
        if slope is None or abs(slope) < 1e-12:
            raise SingularEndpoint(
                f"endpoint {end} is not a simple root of Q")
    mid = 0.5 * (lo + hi)

    def half(end: float, sign: float, w_max: float) -> float:
        def integrand(w):
            if w == 0.0:
                return 2.0 / math.sqrt(abs(profile.dq(end)))
            return 2.0 * w / math.sqrt(float(profile.q(end + sign * w * w)))

        val, _ = quad(integrand, 0.0, w_max, epsrel=rel_tol, epsabs=0.0,
                      limit=200)
        return val

    left = half(lo, +1.0, math.sqrt(mid - lo))
    right = half(hi, -1.0, math.sqrt(hi - mid))
    return left + right


@dataclass(frozen=True)
class BoundaryLimits:
    """One-sided behavior of phi and Q/r^2 as functions of xi = r^2 at xi=0."""

    q0: float
    dphi_dxi: float
    d2phi_dxi2: float
    dqr2_dxi: float
    d2qr2_dxi2: float
    ratios: tuple[float, float, float, float]
    passed: bool


def boundary_limits(table: ReparamTable, endpoint: str) -> BoundaryLimits:
    """Extrapolated limit q0 of Q/r^2 and smoothness diagnostics at r = 0.

    The chosen endpoint ('lo' or 'hi') must be a simple root of Q with
    dQ/dphi = 2a there (validated to 1e-6 relative); then r -> 0 at that
    endpoint, q0 is obtained by Richardson extrapolation over the three
    smallest-r table nodes, and the one-sided first and second derivatives
    of phi and Q/r^2 with respect to xi = r^2 are estimated at xi = 0 with
    step-halving convergence ratios.  Passing requires q0 > 0 and all four
    ratios within [0.2, 5].
    """
    if endpoint not in ("lo", "hi"):
        raise BadParams("endpoint must be 'lo' or 'hi'")
    which = 0 if endpoint == "lo" else 1
    phi0 = table.profile.interval[which]
    slope = table.profile.endpoint_slopes[which]
    if slope is None:
        raise WrongEndpoint(f"endpoint {phi0} is not a root of Q")
    if abs(slope - 2.0 * table.a) > 1e-6 * max(abs(2.0 * table.a), 1e-300):
        raise WrongEndpoint(
            f"dQ/dphi = {slope} at {phi0} does not match 2a = {2 * table.a}")

    # Three smallest-r nodes: Richardson (Neville at xi = 0) for q0.
    idx = np.argsort(table.r_nodes)[:3]
    xi = table.r_nodes[idx] ** 2
    y = np.asarray(table.profile.q(table.phi_nodes[idx])) / xi
    q0 = _neville_at_zero(xi, y)

    # One-sided derivative diagnostics on a geometric ladder of xi steps.
    lo, hi = table.profile.interval
    probe_phi = phi0 + (0.02 if which == 0 else -0.02) * (hi - lo)
    xi_b = float(table.r_of_phi(probe_phi)) ** 2

    def phi_of_xi(x):
        return float(table.phi_of_r(math.sqrt(x)))

    def qr2_of_xi(x):
        p = phi_of_xi(x)
        return float(table.profile.q(p)) / x

    d1_phi, r1_phi = _one_sided_d1(phi_of_xi, float(phi0), xi_b)
    d1_q, r1_q = _one_sided_d1(qr2_of_xi, q0, xi_b)
    d2_phi, r2_phi = _one_sided_d2(phi_of_xi, float(phi0), xi_b)
    d2_q, r2_q = _one_sided_d2(qr2_of_xi, q0, xi_b)
    ratios = (r1_phi, r1_q, r2_phi, r2_q)
    passed = q0 > 0 and all(0.2 <= r <= 5.0 for r in ratios)
    return BoundaryLimits(q0=float(q0), dphi_dxi=d1_phi, d2phi_dxi2=d2_phi,
                          dqr2_dxi=d1_q, d2qr2_dxi2=d2_q, ratios=ratios,
                          passed=passed)


def _neville_at_zero(x: np.ndarray, y: np.ndarray) -> float:
    """Polynomial extrapolation of samples (x_i, y_i) to x = 0."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(y, dtype=float).copy()
    n = len(p)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = p[i + 1] + (p[i] - p[i + 1]) * x[i + level] / (
                x[i + level] - x[i])
    return float(p[0])


def _one_sided_d1(f, f0: float, delta: float):
    """First derivative at 0+ via (f(d) - f0)/d on a halving ladder."""
    d = [(f(delta / 2 ** j) - f0) / (delta / 2 ** j) for j in range(4)]
    extrap = _neville_at_zero(np.array([delta / 2 ** j for j in range(4)]),
                              np.array(d))
    c0, c1 = d[0] - d[1], d[1] - d[2]
    ratio = abs(c0 / c1) if c1 != 0 else 1.0
    return extrap, ratio


def _one_sided_d2(f, f0: float, delta: float):
    """Second derivative at 0+ via (f(2d) - 2f(d) + f0)/d^2, halving ladder."""
    steps = [delta / 2 ** j for j in range(4)]
    d = [(f(2 * h) - 2 * f(h) + f0) / h ** 2 for h in steps]
    extrap = _neville_at_zero(np.array(steps), np.array(d))
    c0, c1 = d[0] - d[1], d[1] - d[2]
    ratio = abs(c0 / c1) if c1 != 0 else 1.0
    return extrap, ratio
