"""Chart-level numerical differential geometry by finite differences.

Charts expose analytic metric and potential values only; every derivative
here is a fifth-order-stencil finite difference (order 4, optional one-level
Richardson extrapolation).  Stencil clouds are integer-coded in units of
h/2, deduplicated, and evaluated through the chart's vectorized callables in
a single batch, which keeps curvature evaluation cheap enough to sample
hundreds of points per model.

Curvature follows the sign convention

    R(u, v)w = nabla_v nabla_u w - nabla_u nabla_v w + nabla_[u,v] w,

so the coordinate components are
R(d_i, d_j)d_k = (d_j Gamma^l_ik - d_i Gamma^l_jk
                  + Gamma^m_ik Gamma^l_jm - Gamma^m_jk Gamma^l_im) d_l,
and the Ricci tensor is the frame contraction
Ric(w, w') = sum_alpha g(R(w, e_alpha)w', e_alpha) over a deterministic
orthonormal frame.  With this pairing a round sphere of Gaussian curvature
K has Ricci = +K g, which the test suite pins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import SingularMetric, StencilOutOfDomain

_W1_OFF = (-2, -1, 1, 2)
_W1_WGT = (1.0, -8.0, 8.0, -1.0)   # / (12 h)
_W2_OFF = (-2, -1, 0, 1, 2)
_W2_WGT = (-1.0, 16.0, -30.0, 16.0, -1.0)   # / (12 h^2)


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference configuration: base step (times the chart's
    fd_scale), stencil order, and one-level Richardson extrapolation."""

    h: float = 1.0e-3
    order: int = 4
    richardson: bool = True

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("FDConfig.h must be positive")
        if self.order != 4:
            raise ValueError("only the order-4 five-point stencil is "
                             "implemented")


@dataclass(frozen=True)
class ChartMetric:
    """A coordinate chart: vectorized metric, constant complex structure,
    potential, and a domain predicate.

    ``g`` maps an (N, n) array of points to (N, n, n) symmetric matrices;
    ``phi`` maps (N, n) to (N,); ``domain`` maps (N, n) to (N,) booleans.
    ``meta`` carries model data (m, a, eps, c, profile, sampling hints).
    """

    n: int
    g: Callable = field(repr=False)
    J: np.ndarray = field(repr=False)
    phi: Callable = field(repr=False)
    domain: Callable = field(repr=False)
    meta: dict = field(default_factory=dict)

    def fd_scale(self) -> float:
        return float(self.meta.get("fd_scale", 1.0))


@dataclass(frozen=True)
class PointTensors:
    """All chart tensors at one point."""

    gamma: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    grad_phi: np.ndarray
    hess_phi: np.ndarray
    Y: float
    Q: float


# ---------------------------------------------------------------------------
# Stencil plans
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stencil_plan(n: int, richardson: bool, second: bool):
    """Integer-coded cloud (units of h/2) plus index maps for reassembly.

    Returns (codes, index) where codes is a tuple of integer offset vectors
    and index maps each code to its row.  Scales: 2 means step h, 1 means
    step h/2 (only present when richardson is on).
    """
    codes = {}

    def add(vec):
        key = tuple(vec)
        if key not in codes:
            codes[key] = len(codes)
        return codes[key]

    add((0,) * n)
    scales = (2, 1) if richardson else (2,)
    for s in scales:
        for i in range(n):
            for c in _W1_OFF + ((-2, 2) if second else ()):
                vec = [0] * n
                vec[i] = c * s
                add(vec)
        if second:
            for i in range(n):
                for j in range(i + 1, n):
                    for a in _W1_OFF:
                        for b in _W1_OFF:
                            vec = [0] * n
                            vec[i] = a * s
                            vec[j] = b * s
                            add(vec)
    rows = [None] * len(codes)
    for key, idx in codes.items():
        rows[idx] = key
    return tuple(rows), codes


class _Cloud:
    """Evaluated stencil cloud of one vectorized function around a point."""

    def __init__(self, chart: ChartMetric, fn, x: np.ndarray, fd: FDConfig,
                 second: bool):
        n = chart.n
        self.n = n
        self.h = fd.h * chart.fd_scale()
        self.richardson = fd.richardson
        self.second = second
        rows, self.index = _stencil_plan(n, fd.richardson, second)
        offsets = np.asarray(rows, dtype=float) * (0.5 * self.h)
        pts = x[None, :] + offsets
        inside = np.asarray(chart.domain(pts), dtype=bool)
        if not np.all(inside):
            raise StencilOutOfDomain(
                f"{int(np.sum(~inside))} stencil points leave the domain "
                f"around {x.tolist()}")
        self.values = np.asarray(fn(pts), dtype=float)

    def _at(self, vec) -> np.ndarray:
        return self.values[self.index[tuple(vec)]]

    def center(self):
        return self._at((0,) * self.n)

    def _d1_scale(self, i: int, s: int):
        h_eff = 0.5 * self.h * s
        acc = 0.0
        for c, w in zip(_W1_OFF, _W1_WGT):
            vec = [0] * self.n
            vec[i] = c * s
            acc = acc + w * self._at(vec)
        return acc / (12.0 * h_eff)

    def d1(self, i: int):
        if not self.richardson:
            return self._d1_scale(i, 2)
        return (16.0 * self._d1_scale(i, 1) - self._d1_scale(i, 2)) / 15.0

    def _d2_diag_scale(self, i: int, s: int):
        h_eff = 0.5 * self.h * s
        acc = 0.0
        for c, w in zip(_W2_OFF, _W2_WGT):
            vec = [0] * self.n
            vec[i] = c * s
            acc = acc + w * self._at(vec)
        return acc / (12.0 * h_eff * h_eff)

    def _d2_cross_scale(self, i: int, j: int, s: int):
        h_eff = 0.5 * self.h * s
        acc = 0.0
        for a, wa in zip(_W1_OFF, _W1_WGT):
            for b, wb in zip(_W1_OFF, _W1_WGT):
                vec = [0] * self.n
                vec[i] = a * s
                vec[j] = b * s
                acc = acc + wa * wb * self._at(vec)
        return acc / (144.0 * h_eff * h_eff)

    def d2(self, i: int, j: int):
        if i == j:
            if not self.richardson:
                return self._d2_diag_scale(i, 2)
            return (16.0 * self._d2_diag_scale(i, 1)
                    - self._d2_diag_scale(i, 2)) / 15.0
        if i > j:
            i, j = j, i
        if not self.richardson:
            return self._d2_cross_scale(i, j, 2)
        return (16.0 * self._d2_cross_scale(i, j, 1)
                - self._d2_cross_scale(i, j, 2)) / 15.0


# ---------------------------------------------------------------------------
# Metric jet and derived tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricJet:
    """Metric, inverse, first/second partials, and Christoffel symbols."""

    g: np.ndarray
    ginv: np.ndarray
    dg: np.ndarray                  # dg[i] = partial_i g
    d2g: Optional[np.ndarray]       # d2g[i, j] = partial_i partial_j g
    gamma: np.ndarray               # gamma[k, i, j]


def metric_jet(chart: ChartMetric, x, fd: FDConfig,
               second: bool = True) -> MetricJet:
    x = np.asarray(x, dtype=float)
    n = chart.n
    cloud = _Cloud(chart, chart.g, x, fd, second)
    g = cloud.center()
    ev = np.linalg.eigvalsh(g)
    if ev[0] <= 0 or ev[0] < 1e-14 * ev[-1]:
        raise SingularMetric(f"metric not positive definite at {x.tolist()}: "
                             f"eigenvalues {ev.tolist()}")
    ginv = np.linalg.inv(g)
    dg = np.stack([cloud.d1(i) for i in range(n)])
    d2g = None
    if second:
        d2g = np.empty((n, n, n, n))
        for i in range(n):
            for j in range(i, n):
                val = cloud.d2(i, j)
                d2g[i, j] = val
                d2g[j, i] = val
    gamma = _christoffel(ginv, dg)
    return MetricJet(g=g, ginv=ginv, dg=dg, d2g=d2g, gamma=gamma)


def _christoffel(ginv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """gamma[k, i, j] = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})."""
    bracket = (np.einsum("ijl->ijl", dg)
               + np.einsum("jil->ijl", dg)
               - np.einsum("lij->ijl", dg))
    return 0.5 * np.einsum("kl,ijl->kij", ginv, bracket)


def connection_coefficients(chart: ChartMetric, x, fd: FDConfig) -> np.ndarray:
    """Christoffel symbols gamma[k, i, j] of the Levi-Civita connection."""
    return metric_jet(chart, x, fd, second=False).gamma


def _gamma_partials(jet: MetricJet) -> np.ndarray:
    """dgamma[j, l, i, k] = partial_j gamma^l_{ik}, assembled analytically
    from the metric jet (no nested differencing)."""
    n = jet.g.shape[0]
    dginv = -np.einsum("la,jab,bm->jlm", jet.ginv, jet.dg, jet.ginv)
    bracket = (np.einsum("ikl->ikl", jet.dg)
               + np.einsum("kil->ikl", jet.dg)
               - np.einsum("lik->ikl", jet.dg))
    dbracket = (np.einsum("jikl->jikl", jet.d2g)
                + np.einsum("jkil->jikl", jet.d2g)
                - np.einsum("jlik->jikl", jet.d2g))
    return 0.5 * (np.einsum("jlm,ikm->jlik", dginv, bracket)
                  + np.einsum("lm,jikm->jlik", jet.ginv, dbracket))


@dataclass(frozen=True)
class CurvatureTensors:
    riemann: np.ndarray     # riemann[l, i, j, k]: R(d_i, d_j)d_k = R^l d_l
    ricci: np.ndarray
    scalar: float
    jet: MetricJet


def curvature(chart: ChartMetric, x, fd: FDConfig) -> CurvatureTensors:
    """Riemann (stated sign convention), Ricci, and scalar curvature."""
    jet = metric_jet(chart, x, fd, second=True)
    dgamma = _gamma_partials(jet)
    gamma = jet.gamma
    riemann = (np.einsum("jlik->lijk", dgamma)
               - np.einsum("iljk->lijk", dgamma)
               + np.einsum("mik,ljm->lijk", gamma, gamma)
               - np.einsum("mjk,lim->lijk", gamma, gamma))
    frame = orthonormal_frame(jet.g)
    lowered = np.einsum("lm,lijk->ijkm", jet.g, riemann)
    # Ric(w, w') = sum_alpha g(R(w, e_alpha)w', e_alpha)
    ricci = np.einsum("aj,am,ijkm->ik", frame, frame, lowered)
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.einsum("ik,ik->", jet.ginv, ricci))
    return CurvatureTensors(riemann=riemann, ricci=ricci, scalar=scalar,
                            jet=jet)


def orthonormal_frame(g: np.ndarray, seeds: Optional[np.ndarray] = None
                      ) -> np.ndarray:
    """Gram-Schmidt orthonormal frame (rows) from the coordinate basis in
    fixed index order, optionally preceded by seed vectors."""
    n = g.shape[0]
    candidates = list(seeds) if seeds is not None else []
    candidates += list(np.eye(n))
    frame = []
    for v in candidates:
        w = np.asarray(v, dtype=float).copy()
        norm0 = np.sqrt(max(w @ g @ w, 0.0))
        for e in frame:
            w = w - (e @ g @ w) * e
        norm = np.sqrt(max(w @ g @ w, 0.0))
        if norm > 1e-10 * max(norm0, 1.0):
            frame.append(w / norm)
        if len(frame) == n:
            break
    if len(frame) != n:
        raise SingularMetric("could not complete an orthonormal frame")
    return np.asarray(frame)


# ---------------------------------------------------------------------------
# Potential derivatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PotentialDerivatives:
    grad_phi: np.ndarray
    dphi: np.ndarray
    hess_phi: np.ndarray
    Y: float
    Q: float


def potential_derivatives(chart: ChartMetric, x, fd: FDConfig,
                          jet: Optional[MetricJet] = None,
                          phi_fn: Optional[Callable] = None
                          ) -> PotentialDerivatives:
    """Gradient, covariant Hessian, Laplacian Y, and Q = g(grad, grad) of
    the chart potential (or of ``phi_fn`` when given)."""
    x = np.asarray(x, dtype=float)
    n = chart.n
    if jet is None:
        jet = metric_jet(chart, x, fd, second=False)
    fn = phi_fn if phi_fn is not None else chart.phi
    cloud = _Cloud(chart, fn, x, fd, second=True)
    dphi = np.array([cloud.d1(i) for i in range(n)])
    d2phi = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            d2phi[i, j] = d2phi[j, i] = cloud.d2(i, j)
    hess = d2phi - np.einsum("kij,k->ij", jet.gamma, dphi)
    hess = 0.5 * (hess + hess.T)
    grad = jet.ginv @ dphi
    Y = float(np.einsum("ij,ij->", jet.ginv, hess))
    Q = float(dphi @ jet.ginv @ dphi)
    return PotentialDerivatives(grad_phi=grad, dphi=dphi, hess_phi=hess,
                                Y=Y, Q=Q)


def point_tensors(chart: ChartMetric, x, fd: FDConfig) -> PointTensors:
    """All tensors of interest at one point, sharing a single metric jet."""
    curv = curvature(chart, x, fd)
    pot = potential_derivatives(chart, x, fd, jet=curv.jet)
    return PointTensors(gamma=curv.jet.gamma, riemann=curv.riemann,
                        ricci=curv.ricci, scalar=curv.scalar,
                        grad_phi=pot.grad_phi, hess_phi=pot.hess_phi,
                        Y=pot.Y, Q=pot.Q)


# ---------------------------------------------------------------------------
# Geodesics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicPath:
    """Sampled geodesics: s has shape (steps+1,), x and v have shape
    (B, steps+1, n); ``alive`` marks paths that stayed in the domain and
    ``drift`` is the worst deviation of |v|_g from 1 along each path."""

    s: np.ndarray
    x: np.ndarray
    v: np.ndarray
    alive: np.ndarray
    drift: np.ndarray


def geodesic(chart: ChartMetric, x0, w0, s_max: float, fd: FDConfig,
             n_steps: int = 4096, record_every: int = 8) -> GeodesicPath:
    """Single-geodesic wrapper over ``geodesic_batch``."""
    path = geodesic_batch(chart, np.asarray(x0, dtype=float)[None, :],
                          np.asarray(w0, dtype=float)[None, :],
                          s_max, fd, n_steps, record_every)
    return path


def geodesic_batch(chart: ChartMetric, x0: np.ndarray, w0: np.ndarray,
                   s_max: float, fd: FDConfig, n_steps: int = 4096,
                   record_every: int = 8) -> GeodesicPath:
    """Integrate x'' + gamma(x)[x', x'] = 0 by fixed-step RK4 for a batch of
    initial conditions; w0 is normalized to unit g-length internally.

    Integration of a path stops (it is marked not alive) once any stencil
    it needs leaves the chart domain; recorded samples after that hold the
    last valid state.
    """
    x0 = np.asarray(x0, dtype=float).copy()
    w0 = np.asarray(w0, dtype=float).copy()
    B, n = x0.shape
    g0 = np.asarray(chart.g(x0))
    norms = np.sqrt(np.einsum("bi,bij,bj->b", w0, g0, w0))
    v = w0 / norms[:, None]
    x = x0
    hstep = s_max / n_steps
    alive = np.ones(B, dtype=bool)

    n_rec = n_steps // record_every
    xs = np.empty((B, n_rec + 1, n))
    vs = np.empty((B, n_rec + 1, n))
    ss = np.empty(n_rec + 1)
    xs[:, 0], vs[:, 0], ss[0] = x, v, 0.0

    rows, index = _stencil_plan(n, fd.richardson, False)
    offsets = np.asarray(rows, dtype=float) * (0.5 * fd.h * chart.fd_scale())
    P = offsets.shape[0]

    def accel(xb, vb, mask):
        acc = np.zeros_like(xb)
        if not np.any(mask):
            return acc, mask
        pts = (xb[mask][:, None, :] + offsets[None, :, :]).reshape(-1, n)
        inside = np.asarray(chart.domain(pts), dtype=bool).reshape(-1, P)
        ok = np.all(inside, axis=1)
        newmask = mask.copy()
        newmask[np.nonzero(mask)[0][~ok]] = False
        if not np.any(ok):
            return acc, newmask
        vals = np.asarray(chart.g(pts)).reshape(-1, P, n, n)[ok]
        idx_active = np.nonzero(mask)[0][ok]
        gam = _batch_gamma(vals, index, n, fd.richardson,
                           fd.h * chart.fd_scale())
        vv = vb[idx_active]
        acc[idx_active] = -np.einsum("bkij,bi,bj->bk", gam, vv, vv)
        return acc, newmask

    drift = np.zeros(B)
    rec = 0
    for step in range(n_steps):
        k1a, alive = accel(x, v, alive)
        k1x = v
        k2a, alive = accel(x + 0.5 * hstep * k1x, v + 0.5 * hstep * k1a, alive)
        k2x = v + 0.5 * hstep * k1a
        k3a, alive = accel(x + 0.5 * hstep * k2x, v + 0.5 * hstep * k2a, alive)
        k3x = v + 0.5 * hstep * k2a
        k4a, alive = accel(x + hstep * k3x, v + hstep * k3a, alive)
        k4x = v + hstep * k3a
        m = alive
        x = np.where(m[:, None], x + hstep / 6.0 *
                     (k1x + 2 * k2x + 2 * k3x + k4x), x)
        v = np.where(m[:, None], v + hstep / 6.0 *
                     (k1a + 2 * k2a + 2 * k3a + k4a), v)
        if (step + 1) % record_every == 0:
            rec += 1
            xs[:, rec], vs[:, rec], ss[rec] = x, v, (step + 1) * hstep
            inside = np.asarray(chart.domain(x), dtype=bool)
            live = alive & inside
            if np.any(live):
                gx = np.asarray(chart.g(x[live]))
                speed = np.sqrt(np.einsum("bi,bij,bj->b", v[live], gx,
                                          v[live]))
                drift[live] = np.maximum(drift[live], np.abs(speed - 1.0))
    return GeodesicPath(s=ss, x=xs, v=vs, alive=alive, drift=drift)


def _batch_gamma(vals: np.ndarray, index: dict, n: int, richardson: bool,
                 h: float) -> np.ndarray:
    """Christoffel symbols for a batch of pre-evaluated metric clouds."""
    B = vals.shape[0]

    def at(vec):
        return vals[:, index[tuple(vec)]]

    def d1_scale(i, s):
        h_eff = 0.5 * h * s
        acc = np.zeros((B, n, n))
        for c, w in zip(_W1_OFF, _W1_WGT):
            vec = [0] * n
            vec[i] = c * s
            acc += w * at(vec)
        return acc / (12.0 * h_eff)

    dg = np.empty((B, n, n, n))
    for i in range(n):
        if richardson:
            dg[:, i] = (16.0 * d1_scale(i, 1) - d1_scale(i, 2)) / 15.0
        else:
            dg[:, i] = d1_scale(i, 2)
    g0 = at((0,) * n)
    ginv = np.linalg.inv(g0)
    bracket = (np.einsum("bijl->bijl", dg) + np.einsum("bjil->bijl", dg)
               - np.einsum("blij->bijl", dg))
    return 0.5 * np.einsum("bkl,bijl->bkij", ginv, bracket)


# ---------------------------------------------------------------------------
# Kahler and Killing residuals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KahlerResiduals:
    hermitian_res: float
    domega_res: float
    nabla_j_res: float

    def worst(self) -> float:
        return max(self.hermitian_res, self.domega_res, self.nabla_j_res)


def kahler_residuals(chart: ChartMetric, x, fd: FDConfig) -> KahlerResiduals:
    """Hermitian-metric, closed-form, and parallel-J residuals at a point.

    hermitian_res = max|J^T g J - g| / max|g|;
    domega_res    = max|(d omega)_{ijk}| / (1 + max|dg|), omega = J^T g;
    nabla_j_res   = max|gamma J - J gamma contraction| / (1 + max|gamma|).
    """
    x = np.asarray(x, dtype=float)
    jet = metric_jet(chart, x, fd, second=False)
    J = chart.J
    g_scale = float(np.max(np.abs(jet.g)))
    herm = float(np.max(np.abs(J.T @ jet.g @ J - jet.g))) / g_scale
    # omega_{jk} = (J^T g)_{jk}; d omega from the metric partials.
    dom = np.einsum("mj,imk->ijk", J, jet.dg)
    n = chart.n
    res = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                val = dom[i, j, k] - dom[j, i, k] + dom[k, i, j]
                res = max(res, abs(float(val)))
    dscale = 1.0 + float(np.max(np.abs(jet.dg)))
    # (nabla_k J)^i_j = gamma^i_{km} J^m_j - gamma^m_{kj} J^i_m.
    nj = (np.einsum("ikm,mj->kij", jet.gamma, J)
          - np.einsum("mkj,im->kij", jet.gamma, J))
    gscale2 = 1.0 + float(np.max(np.abs(jet.gamma)))
    return KahlerResiduals(hermitian_res=herm,
                           domega_res=res / dscale,
                           nabla_j_res=float(np.max(np.abs(nj))) / gscale2)


@dataclass(frozen=True)
class KillingResiduals:
    sym_nabla_u_res: float
    hermitian_hess_res: float

    def worst(self) -> float:
        return max(self.sym_nabla_u_res, self.hermitian_hess_res)


def killing_residual(chart: ChartMetric, x, fd: FDConfig,
                     phi_fn: Optional[Callable] = None) -> KillingResiduals:
    """Killing-field and Hermitian-Hessian residuals for u = J grad(phi).

    sym_nabla_u_res    = max|symmetrized lowered nabla u| / (1 + max|nabla u|);
    hermitian_hess_res = max|H(J., .) + H(., J.)| / (1 + max|H|).
    """
    x = np.asarray(x, dtype=float)
    n = chart.n
    jet = metric_jet(chart, x, fd, second=False)
    phi = phi_fn if phi_fn is not None else chart.phi
    J = chart.J

    def u_field(pts):
        pts = np.asarray(pts, dtype=float)
        ginvs = np.linalg.inv(np.asarray(chart.g(pts)))
        dphis = _batch_grad_scalar(chart, phi, pts, fd)
        return np.einsum("kl,blm,bm->bk", J, ginvs, dphis)

    cloud = _Cloud(chart, u_field, x, fd, second=False)
    du = np.stack([cloud.d1(i) for i in range(n)])    # du[j, k] = d_j u^k
    u0 = cloud.center()
    nu = du.T + np.einsum("kjm,m->kj", jet.gamma, u0)  # nabla_j u^k at [k, j]
    lowered = np.einsum("ik,kj->ij", jet.g, nu)
    sym = lowered + lowered.T
    sym_res = float(np.max(np.abs(sym))) / (1.0 + float(np.max(np.abs(lowered))))

    pot = potential_derivatives(chart, x, fd, jet=jet, phi_fn=phi)
    H = pot.hess_phi
    herm = J.T @ H @ J - H
    herm_res = float(np.max(np.abs(herm))) / (1.0 + float(np.max(np.abs(H))))
    return KillingResiduals(sym_nabla_u_res=sym_res,
                            hermitian_hess_res=herm_res)


def _batch_grad_scalar(chart: ChartMetric, fn, pts: np.ndarray,
                       fd: FDConfig) -> np.ndarray:
    """Euclidean gradient of a scalar function at a batch of points."""
    n = chart.n
    h = fd.h * chart.fd_scale()
    B = pts.shape[0]
    scales = (2, 1) if fd.richardson else (2,)
    cloud_pts = []
    for s in scales:
        for i in range(n):
            for c in _W1_OFF:
                off = np.zeros(n)
                off[i] = c * s * 0.5 * h
                cloud_pts.append(pts + off[None, :])
    allpts = np.concatenate(cloud_pts, axis=0)
    vals = np.asarray(fn(allpts), dtype=float).reshape(len(cloud_pts), B)
    out = np.zeros((B, n))
    block = 0

    def d1_for_scale(s, block_start):
        res = np.zeros((B, n))
        b = block_start
        for i in range(n):
            acc = np.zeros(B)
            for c, w in zip(_W1_OFF, _W1_WGT):
                acc += w * vals[b]
                b += 1
            res[:, i] = acc / (12.0 * (0.5 * h * s))
        return res, b

    if fd.richardson:
        d_h, block = d1_for_scale(2, 0)
        d_h2, block = d1_for_scale(1, block)
        out = (16.0 * d_h2 - d_h) / 15.0
    else:
        out, block = d1_for_scale(2, 0)
    return out
