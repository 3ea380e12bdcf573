"""Identity suites for built charts: eigenstructure of the Hessian and Ricci
tensors, the profile identities, conformally-Einstein and soliton residuals,
geodesic checks, and type classification.

Every residual reported here is scale-normalized (the normalization is named
in the docstring of the operation that produces it), so the default
tolerances are meaningful across models regardless of metric scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CriticalPoint, MissingMeta, PhiNearZero
from .profiles import Profile, TypeTag, classify_type
from .tensor import (
    ChartMetric,
    FDConfig,
    GeodesicPath,
    _batch_grad_scalar,
    curvature,
    geodesic_batch,
    metric_jet,
    orthonormal_frame,
    potential_derivatives,
)

GRAD_FLOOR = 1.0e-6


# ---------------------------------------------------------------------------
# Frames adapted to the potential
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdaptedFrame:
    """Orthonormal frame whose first two vectors span {grad phi, J grad phi}."""

    frame: np.ndarray      # rows: v_hat, u_hat, then the orthogonal block
    Q: float
    grad_phi: np.ndarray


def adapted_frame(chart: ChartMetric, g: np.ndarray, grad_phi: np.ndarray
                  ) -> AdaptedFrame:
    Q = float(grad_phi @ g @ grad_phi)
    if Q <= GRAD_FLOOR ** 2:
        raise CriticalPoint(f"|grad phi|_g = {math.sqrt(max(Q, 0.0))} too "
                            "small for an eigenstructure split")
    v_hat = grad_phi / math.sqrt(Q)
    u_hat = chart.J @ v_hat
    frame = orthonormal_frame(g, seeds=np.stack([v_hat, u_hat]))
    return AdaptedFrame(frame=frame, Q=Q, grad_phi=grad_phi)


def _frame_blocks(frame: np.ndarray, g: np.ndarray, tensor: np.ndarray):
    """Components of a twice-covariant tensor in the adapted frame."""
    return np.einsum("ai,ij,bj->ab", frame, tensor, frame)


# ---------------------------------------------------------------------------
# Eigenstructure report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenstructureReport:
    """Per-point eigenvalues and worst-case block residuals.

    sigma/tau are the orthogonal-block and gradient-plane eigenvalues of the
    Hessian of phi, lam/mu the corresponding Ricci eigenvalues.  Residuals
    are maxima over the sampled points of frame-component deviations,
    normalized by (1 + |tau| + |sigma|) for the Hessian and
    (1 + |lam| + |mu|) for the Ricci tensor.
    """

    points: np.ndarray
    phi: np.ndarray
    Q: np.ndarray
    sigma: np.ndarray
    tau: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    Y: np.ndarray
    hess_h_res: float
    hess_v_res: float
    hess_mixed_res: float
    ricci_h_res: float
    ricci_v_res: float
    ricci_mixed_res: float
    eps_consistent: bool

    def worst(self) -> float:
        return max(self.hess_h_res, self.hess_v_res, self.hess_mixed_res,
                   self.ricci_h_res, self.ricci_v_res, self.ricci_mixed_res)


def skrp_report(chart: ChartMetric, points: np.ndarray, fd: FDConfig
                ) -> EigenstructureReport:
    """Eigenstructure of Hess(phi) and Ricci against the orthogonal split.

    tau and mu are read off the gradient direction; sigma and lam come from
    the trace identities Y = 2 tau + 2(m-1) sigma and
    scal = 2 mu + 2(m-1) lam; the block residuals are the actual
    eigenstructure test.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    m = int(chart.meta.get("m", chart.n // 2))
    eps = chart.meta.get("eps")
    n = chart.n
    out = {k: [] for k in ("phi", "Q", "sigma", "tau", "lam", "mu", "Y")}
    res = dict(hh=0.0, hv=0.0, hm=0.0, rh=0.0, rv=0.0, rm=0.0)
    eps_ok = True
    for x in points:
        curv = curvature(chart, x, fd)
        pot = potential_derivatives(chart, x, fd, jet=curv.jet)
        af = adapted_frame(chart, curv.jet.g, pot.grad_phi)
        hb = _frame_blocks(af.frame, curv.jet.g, pot.hess_phi)
        rb = _frame_blocks(af.frame, curv.jet.g, curv.ricci)
        tau = 0.5 * (hb[0, 0] + hb[1, 1])
        mu = 0.5 * (rb[0, 0] + rb[1, 1])
        if n > 2:
            sigma = (pot.Y - 2.0 * tau) / (2.0 * (m - 1))
            lam = (curv.scalar - 2.0 * mu) / (2.0 * (m - 1))
        else:
            sigma, lam = 0.0, 0.0
        h_scale = 1.0 + abs(tau) + abs(sigma)
        r_scale = 1.0 + abs(mu) + abs(lam)
        vv = hb[:2, :2] - tau * np.eye(2)
        res["hv"] = max(res["hv"], float(np.max(np.abs(vv))) / h_scale)
        rv = rb[:2, :2] - mu * np.eye(2)
        res["rv"] = max(res["rv"], float(np.max(np.abs(rv))) / r_scale)
        if n > 2:
            hh = hb[2:, 2:] - sigma * np.eye(n - 2)
            res["hh"] = max(res["hh"], float(np.max(np.abs(hh))) / h_scale)
            res["hm"] = max(res["hm"],
                            float(np.max(np.abs(hb[:2, 2:]))) / h_scale)
            rh = rb[2:, 2:] - lam * np.eye(n - 2)
            res["rh"] = max(res["rh"], float(np.max(np.abs(rh))) / r_scale)
            res["rm"] = max(res["rm"],
                            float(np.max(np.abs(rb[:2, 2:]))) / r_scale)
            if eps in (-1, 1):
                sigma_h = float(np.trace(hb[2:, 2:])) / (n - 2)
                if abs(sigma_h) > 1e-8 and int(np.sign(sigma_h)) != eps:
                    eps_ok = False
        out["phi"].append(float(chart.phi(x[None, :])[0]))
        out["Q"].append(pot.Q)
        out["sigma"].append(sigma)
        out["tau"].append(tau)
        out["lam"].append(lam)
        out["mu"].append(mu)
        out["Y"].append(pot.Y)
    return EigenstructureReport(
        points=points, phi=np.array(out["phi"]), Q=np.array(out["Q"]),
        sigma=np.array(out["sigma"]), tau=np.array(out["tau"]),
        lam=np.array(out["lam"]), mu=np.array(out["mu"]),
        Y=np.array(out["Y"]),
        hess_h_res=res["hh"], hess_v_res=res["hv"], hess_mixed_res=res["hm"],
        ricci_h_res=res["rh"], ricci_v_res=res["rv"], ricci_mixed_res=res["rm"],
        eps_consistent=eps_ok)


# ---------------------------------------------------------------------------
# Gradient-direction identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the five gradient-direction identities.

    (i)   dQ = 2 tau dphi                (covector comparison)
    (ii)  Y = 2 tau + 2(m-1) sigma_H     (sigma_H from the orthogonal block)
    (iii) Q = 2 (phi - c) sigma_H        (only when eps = +-1)
    (iv)  dY = -2 mu dphi
    (v)   2 tau = dQ/dphi at phi(x)      (when a profile is attached)

    Each residual is normalized by 1 plus the magnitude of the quantity it
    compares.  ``vacuous`` lists identities skipped by the chart's data.
    """

    dq_res: float
    trace_res: float
    sigma_ratio_res: Optional[float]
    dy_res: float
    profile_res: Optional[float]
    vacuous: tuple

    def worst(self) -> float:
        vals = [self.dq_res, self.trace_res, self.dy_res]
        if self.sigma_ratio_res is not None:
            vals.append(self.sigma_ratio_res)
        if self.profile_res is not None:
            vals.append(self.profile_res)
        return max(vals)


def _outer_covector(field_fn: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """Order-4 differential of a scalar field given as a batch callable."""
    n = x.shape[0]
    offs = (-2, -1, 1, 2)
    wgts = (1.0, -8.0, 8.0, -1.0)
    pts = np.empty((4 * n, n))
    k = 0
    for i in range(n):
        for c in offs:
            pts[k] = x
            pts[k, i] += c * h
            k += 1
    vals = np.asarray(field_fn(pts), dtype=float)
    out = np.empty(n)
    k = 0
    for i in range(n):
        acc = 0.0
        for c, w in zip(offs, wgts):
            acc += w * vals[k]
            k += 1
        out[i] = acc / (12.0 * h)
    return out


def q_field(chart: ChartMetric, fd: FDConfig) -> Callable:
    """Vectorized x -> Q(x) = g(grad phi, grad phi)(x)."""

    def qf(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        gs = np.asarray(chart.g(pts))
        dphis = _batch_grad_scalar(chart, chart.phi, pts, fd)
        return np.einsum("bi,bij,bj->b", dphis, np.linalg.inv(gs), dphis)

    return qf


def y_field(chart: ChartMetric, fd: FDConfig) -> Callable:
    """Vectorized x -> Y(x), the Laplacian of phi (pointwise loop inside).

    Uses a widened inner step: Y feeds an outer derivative downstream, so
    its roundoff floor matters more than its truncation order.
    """
    fd_inner = FDConfig(h=3.0 * fd.h, order=fd.order, richardson=fd.richardson)

    def yf(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.array([potential_derivatives(chart, p, fd_inner).Y
                         for p in pts])

    return yf


def identity_report(chart: ChartMetric, points: np.ndarray, fd: FDConfig
                    ) -> IdentityReport:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    m = int(chart.meta.get("m", chart.n // 2))
    eps = chart.meta.get("eps")
    c = chart.meta.get("c")
    profile: Optional[Profile] = chart.meta.get("profile")
    n = chart.n
    h_outer = 3.0 * fd.h * chart.fd_scale()
    h_outer_y = 9.0 * fd.h * chart.fd_scale()
    qf = q_field(chart, fd)
    yf = y_field(chart, fd)

    dq_res = trace_res = dy_res = 0.0
    ratio_res = 0.0 if (eps in (-1, 1) and c is not None) else None
    prof_res = 0.0 if profile is not None else None
    for x in points:
        jet = metric_jet(chart, x, fd, second=False)
        pot = potential_derivatives(chart, x, fd, jet=jet)
        af = adapted_frame(chart, jet.g, pot.grad_phi)
        hb = _frame_blocks(af.frame, jet.g, pot.hess_phi)
        tau = 0.5 * (hb[0, 0] + hb[1, 1])
        curv = curvature(chart, x, fd)
        rb = _frame_blocks(af.frame, jet.g, curv.ricci)
        mu = 0.5 * (rb[0, 0] + rb[1, 1])
        dq = _outer_covector(qf, x, h_outer)
        dq_res = max(dq_res, float(np.max(np.abs(dq - 2.0 * tau * pot.dphi)))
                     / (1.0 + float(np.max(np.abs(dq)))))
        if n > 2:
            sigma_h = float(np.trace(hb[2:, 2:])) / (n - 2)
        else:
            sigma_h = 0.0
        trace_res = max(trace_res,
                        abs(pot.Y - 2.0 * tau - 2.0 * (m - 1) * sigma_h)
                        / (1.0 + abs(pot.Y)))
        if ratio_res is not None:
            phi_val = float(chart.phi(x[None, :])[0])
            ratio_res = max(ratio_res,
                            abs(pot.Q - 2.0 * (phi_val - c) * sigma_h)
                            / (1.0 + abs(pot.Q)))
        dy = _outer_covector(yf, x, h_outer_y)
        dy_res = max(dy_res, float(np.max(np.abs(dy + 2.0 * mu * pot.dphi)))
                     / (1.0 + float(np.max(np.abs(dy)))))
        if prof_res is not None:
            phi_val = float(chart.phi(x[None, :])[0])
            dqdphi = float(profile.dq(phi_val))
            prof_res = max(prof_res,
                           abs(2.0 * tau - dqdphi) / (1.0 + abs(dqdphi)))
    vacuous = ()
    if ratio_res is None:
        vacuous += ("sigma_ratio",)
    if prof_res is None:
        vacuous += ("profile_slope",)
    return IdentityReport(dq_res=dq_res, trace_res=trace_res,
                          sigma_ratio_res=ratio_res, dy_res=dy_res,
                          profile_res=prof_res, vacuous=vacuous)


# ---------------------------------------------------------------------------
# Conformally-Einstein report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConformalEinsteinReport:
    """Einstein residual of g/phi^2, its constant spread, and the wedge
    residual of dphi with dY.

    einstein_res: max frame-component deviation of Ric(g~) from its trace
    part, normalized by (1 + |lambda~|); lambda_spread: spread of the
    pointwise Einstein quotient normalized by (1 + median |lambda~|);
    wedge_res: max component of dphi wedge dY over (1 + |dphi| |dY|).
    """

    einstein_res: float
    lambda_spread: float
    wedge_res: float
    lambdas: np.ndarray


def conformal_chart(chart: ChartMetric, phi_floor: float) -> ChartMetric:
    """The chart carrying g~ = g / phi^2 on the locus |phi| > phi_floor."""

    def g_fn(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        phi = np.asarray(chart.phi(pts), dtype=float)
        return np.asarray(chart.g(pts)) / (phi ** 2)[:, None, None]

    def domain_fn(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        inside = np.asarray(chart.domain(pts), dtype=bool)
        phi = np.asarray(chart.phi(pts), dtype=float)
        return inside & (np.abs(phi) > phi_floor)

    return ChartMetric(n=chart.n, g=g_fn, J=chart.J, phi=chart.phi,
                       domain=domain_fn, meta=dict(chart.meta))


def conformal_einstein_report(chart: ChartMetric, points: np.ndarray,
                              fd: FDConfig) -> ConformalEinsteinReport:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    profile: Optional[Profile] = chart.meta.get("profile")
    if profile is not None:
        phi_max = max(abs(profile.phi_min), abs(profile.phi_max))
    else:
        phi_max = float(np.max(np.abs(chart.phi(points))))
    floor = 0.1 * phi_max
    phis = np.asarray(chart.phi(points), dtype=float)
    if np.any(np.abs(phis) <= floor):
        raise PhiNearZero(f"|phi| <= {floor} at a requested point")
    tilde = conformal_chart(chart, 0.5 * floor)
    n = chart.n
    h_outer_y = 9.0 * fd.h * chart.fd_scale()
    yf = y_field(chart, fd)

    einstein_res = 0.0
    wedge_res = 0.0
    lambdas = []
    for x in points:
        curv = curvature(tilde, x, fd)
        lam = curv.scalar / n
        frame = orthonormal_frame(curv.jet.g)
        rb = np.einsum("ai,ij,bj->ab", frame, curv.ricci, frame)
        einstein_res = max(einstein_res,
                           float(np.max(np.abs(rb - lam * np.eye(n))))
                           / (1.0 + abs(lam)))
        lambdas.append(lam)
        pot = potential_derivatives(chart, x, fd)
        dy = _outer_covector(yf, x, h_outer_y)
        wedge = np.abs(np.outer(pot.dphi, dy) - np.outer(dy, pot.dphi))
        scale = 1.0 + float(np.linalg.norm(pot.dphi) * np.linalg.norm(dy))
        wedge_res = max(wedge_res, float(np.max(wedge)) / scale)
    lambdas = np.array(lambdas)
    spread = float(np.max(lambdas) - np.min(lambdas)) / (
        1.0 + float(np.median(np.abs(lambdas))))
    return ConformalEinsteinReport(einstein_res=einstein_res,
                                   lambda_spread=spread,
                                   wedge_res=wedge_res, lambdas=lambdas)


# ---------------------------------------------------------------------------
# Soliton report
# ---------------------------------------------------------------------------

def soliton_report(chart: ChartMetric, p: float, s0: float,
                   points: np.ndarray, fd: FDConfig) -> float:
    """Max frame-component residual of Hess(phi) + p Ric - s0 g over the
    points, normalized by (1 + |s0|)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    res = 0.0
    for x in points:
        curv = curvature(chart, x, fd)
        pot = potential_derivatives(chart, x, fd, jet=curv.jet)
        frame = orthonormal_frame(curv.jet.g)
        combo = pot.hess_phi + p * curv.ricci - s0 * curv.jet.g
        cb = np.einsum("ai,ij,bj->ab", frame, combo, frame)
        res = max(res, float(np.max(np.abs(cb))) / (1.0 + abs(s0)))
    return res


# ---------------------------------------------------------------------------
# Normal geodesic report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalGeodesicReport:
    dphids_res: float
    gauss_res: float
    distance_vs_L: Optional[float]


def _path_dphids_res(chart: ChartMetric, profile: Profile, sgn_a: float,
                     path: GeodesicPath, skip: int = 2) -> float:
    """Residual of dphi/ds = sgn(a) sqrt(Q) along recorded path samples."""
    B = path.x.shape[0]
    s = path.s
    ds = s[1] - s[0]
    res = 0.0
    for b in range(B):
        phis = np.asarray(chart.phi(path.x[b]), dtype=float)
        dphids = np.gradient(phis, ds, edge_order=2)
        q = np.clip(np.asarray(profile.q(phis), dtype=float), 0.0, None)
        expect = sgn_a * np.sqrt(q)
        err = np.abs(dphids - expect)[skip:-skip if skip else None]
        res = max(res, float(np.max(err)) / (1.0 + float(np.max(np.abs(expect)))))
    return res


def _fan_gauss_res(chart: ChartMetric, path: GeodesicPath,
                   dtheta: float) -> float:
    """Max |g(x_s, x_t)| across a closed fan, x_t by adjacent differences,
    normalized by |x_s|_g |x_t|_g at each sample."""
    B, S, n = path.x.shape
    res = 0.0
    for t in range(1, S):
        pts = path.x[:, t, :]
        gs = np.asarray(chart.g(pts))
        x_t = (np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)) / (2 * dtheta)
        v = path.v[:, t, :]
        ip = np.einsum("bi,bij,bj->b", v, gs, x_t)
        nv = np.sqrt(np.einsum("bi,bij,bj->b", v, gs, v))
        nt = np.sqrt(np.einsum("bi,bij,bj->b", x_t, gs, x_t))
        res = max(res, float(np.max(np.abs(ip) / (1.0 + nv * nt))))
    return res


def sphere_normal_geodesics(model, fd: FDConfig, n_fan: int = 16,
                            n_steps: int = 4096) -> NormalGeodesicReport:
    """Geodesic fan from the pole chart point of the sphere model: checks
    dphi/ds = sgn(a) sqrt(Q), the Gauss orthogonality of the fan, and
    pole-to-pole arclength against the distance invariant L.

    The pole-to-pole length is twice the arclength from the pole to the
    equator circle r = 1, the fixed locus of the inversion isometry.
    """
    chart = model.chart
    profile = chart.meta["profile"]
    K = chart.meta["K"]
    a = chart.meta["a"]
    L = math.pi / math.sqrt(K)
    thetas = np.arange(n_fan) * (2 * math.pi / n_fan)
    x0 = np.zeros((n_fan, 2))
    w0 = np.column_stack([np.cos(thetas), np.sin(thetas)])
    s_max = 0.9 * L
    path = geodesic_batch(chart, x0, w0, s_max, fd, n_steps=n_steps,
                          record_every=4)
    dres = _path_dphids_res(chart, profile, math.copysign(1.0, a), path)
    gres = _fan_gauss_res(chart, path, 2 * math.pi / n_fan)
    # Equator crossing of the first ray.
    r = np.linalg.norm(path.x[0], axis=1)
    idx = int(np.argmax(r >= 1.0))
    if idx == 0:
        distance = None
    else:
        f = (1.0 - r[idx - 1]) / (r[idx] - r[idx - 1])
        s_cross = path.s[idx - 1] + f * (path.s[idx] - path.s[idx - 1])
        distance = abs(2.0 * s_cross - L)
    return NormalGeodesicReport(dphids_res=dres, gauss_res=gres,
                                distance_vs_L=distance)


def shell_normal_geodesics(chart: ChartMetric, fd: FDConfig, n_fan: int = 16,
                           n_steps: int = 2048) -> NormalGeodesicReport:
    """Radial geodesic fan on a shell chart, started on an inner radius
    circle with outward unit normals; checks dphi/ds and Gauss
    orthogonality (no distance target on an open shell)."""
    profile = chart.meta["profile"]
    table = chart.meta["table"]
    a = chart.meta["a"]
    r_lo, r_hi = chart.meta["r_range"]
    r_in = r_lo * (r_hi / r_lo) ** 0.18
    r_out = r_lo * (r_hi / r_lo) ** 0.82
    phi_in = float(table.phi_of_r(r_in))
    phi_out = float(table.phi_of_r(r_out))
    s_max = abs(float(table.s_of_phi(phi_out)) - float(table.s_of_phi(phi_in)))
    thetas = np.arange(n_fan) * (2 * math.pi / n_fan)
    n = chart.n
    x0 = np.zeros((n_fan, n))
    x0[:, 0] = r_in * np.cos(thetas)
    x0[:, 1] = r_in * np.sin(thetas)
    w0 = x0 / r_in
    path = geodesic_batch(chart, x0, w0, s_max, fd, n_steps=n_steps,
                          record_every=4)
    dres = _path_dphids_res(chart, profile, math.copysign(1.0, a), path)
    gres = _fan_gauss_res(chart, path, 2 * math.pi / n_fan)
    return NormalGeodesicReport(dphids_res=dres, gauss_res=gres,
                                distance_vs_L=None)


# ---------------------------------------------------------------------------
# Extended curvature oracle
# ---------------------------------------------------------------------------

def vertical_curvature_identity(chart: ChartMetric, points: np.ndarray,
                                fd: FDConfig) -> float:
    """Residual of Q R(w, w') grad(phi) = 2 (sigma - tau) sigma g(Jw, w') u
    over orthogonal-block frame pairs (w, w'), normalized by 1 + |rhs|.

    An extended oracle beyond the block residuals: it applies the full
    curvature tensor to specific frames.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    m = int(chart.meta.get("m", chart.n // 2))
    worst = 0.0
    for x in points:
        curv = curvature(chart, x, fd)
        pot = potential_derivatives(chart, x, fd, jet=curv.jet)
        af = adapted_frame(chart, curv.jet.g, pot.grad_phi)
        hb = _frame_blocks(af.frame, curv.jet.g, pot.hess_phi)
        tau = 0.5 * (hb[0, 0] + hb[1, 1])
        sigma = (pot.Y - 2.0 * tau) / (2.0 * (m - 1)) if chart.n > 2 else 0.0
        v = pot.grad_phi
        u = chart.J @ v
        block = af.frame[2:]
        for i in range(len(block)):
            for j in range(len(block)):
                w, wp = block[i], block[j]
                lhs = af.Q * np.einsum("lijk,i,j,k->l", curv.riemann, w, wp,
                                       v)
                coeff = 2.0 * (sigma - tau) * sigma * float(
                    (chart.J @ w) @ curv.jet.g @ wp)
                rhs = coeff * u
                worst = max(worst, float(np.linalg.norm(lhs - rhs))
                            / (1.0 + float(np.linalg.norm(rhs))))
    return worst


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify_model(chart: ChartMetric,
                   profile: Optional[Profile] = None) -> TypeTag:
    """Type classification of a model chart from its metadata."""
    if "eps" not in chart.meta:
        raise MissingMeta("chart metadata lacks 'eps'")
    eps = chart.meta["eps"]
    prof = profile if profile is not None else chart.meta.get("profile")
    if prof is None:
        raise MissingMeta("chart metadata lacks a profile")
    c = chart.meta.get("c")
    return classify_type(eps if eps in (-1, 0, 1) else 0, c, prof.interval)
