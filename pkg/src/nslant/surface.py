"""Chart-based 2-D pseudo-Riemannian surfaces.

A chart is a metric field ``(u, v) -> g_ij`` on a coordinate box. Christoffel
symbols come from central differences of the metric (or a closed form when the
chart supplies one); the Riemann tensor uses second differences of the metric
so that no finite difference is nested.

Index conventions::

    christoffel[..., i, j, k]  = Gamma^i_jk
    riemann[..., m, l, a, b]   = component m of R(d_a, d_b) d_l
    R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]

With these, ``sigma = g(R(d1, d2) d2, d1) / det g`` is +1 on the unit sphere and
on unit de Sitter space.
"""

from dataclasses import dataclass

import numpy as np

from . import numdiff
from .errors import DegenerateMetric, OutOfDomain

DET_TOL = 1e-10


@dataclass(frozen=True)
class CurvatureReport:
    point: np.ndarray
    sigma: np.ndarray
    r1212: np.ndarray


class SurfaceChart:
    """A 2-D metric field over a coordinate box.

    Parameters
    ----------
    name : str
    metric : callable
        ``metric(u, v)`` returning an array (..., 2, 2); must broadcast.
    signature : tuple
        ``(1, -1)`` for Lorentzian charts, ``(1, 1)`` for Riemannian ones.
    domain : ((u0, u1), (v0, v1))
    christoffel : callable, optional
        Closed-form ``christoffel(u, v)`` returning (..., 2, 2, 2).
    h1, h2 : float
        Steps for first and second metric derivatives.
    """

    def __init__(self, name, metric, signature, domain, christoffel=None,
                 h1=1e-3, h2=2e-3, params=None):
        self.name = name
        self._metric = metric
        self.signature = tuple(int(s) for s in signature)
        if sorted(self.signature) not in ([-1, 1], [1, 1]):
            raise ValueError(f"signature must be (1, -1) or (1, 1), got {signature}")
        self.domain = tuple(tuple(float(x) for x in d) for d in domain)
        self._christoffel = christoffel
        self.h1 = h1
        self.h2 = h2
        self.params = dict(params or {})
        self._check_signature()

    def __repr__(self):
        return f"SurfaceChart({self.name!r}, params={self.params})"

    @property
    def lorentzian(self):
        return -1 in self.signature

    def _check_signature(self):
        (u0, u1), (v0, v1) = self.domain
        uc, vc = np.clip(0.0, u0, u1), np.clip(0.0, v0, v1)
        rng = np.random.default_rng(0)
        pts = np.column_stack([
            np.concatenate([[uc], rng.uniform(max(u0, uc - 1), min(u1, uc + 1), 4)]),
            np.concatenate([[vc], rng.uniform(max(v0, vc - 1), min(v1, vc + 1), 4)]),
        ])
        g = self.metric_at(pts)
        if not np.allclose(g, np.swapaxes(g, -1, -2)):
            raise DegenerateMetric(f"{self.name}: metric is not symmetric")
        eig = np.linalg.eigvalsh(g)
        want = np.sort(np.array(self.signature, dtype=float))
        if np.any(np.sign(eig) != want):
            raise DegenerateMetric(
                f"{self.name}: eigenvalue signs {np.sign(eig[0])} do not match declared "
                f"signature {self.signature}"
            )

    def contains(self, p, margin=0.0):
        p = np.asarray(p, dtype=float)
        (u0, u1), (v0, v1) = self.domain
        return ((p[..., 0] >= u0 + margin) & (p[..., 0] <= u1 - margin)
                & (p[..., 1] >= v0 + margin) & (p[..., 1] <= v1 - margin))

    def _require(self, p, margin):
        if not np.all(self.contains(p, margin)):
            bad = np.asarray(p)[~self.contains(p, margin)]
            raise OutOfDomain(f"{self.name}: points outside domain {self.domain}: {bad[:3]}")

    def _raw_metric(self, p):
        p = np.asarray(p, dtype=float)
        g = np.asarray(self._metric(p[..., 0], p[..., 1]), dtype=float)
        return np.broadcast_to(g, p.shape[:-1] + (2, 2))

    def metric_at(self, p):
        p = np.asarray(p, dtype=float)
        self._require(p, 0.0)
        g = self._raw_metric(p)
        det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] * g[..., 1, 0]
        if np.any(np.abs(det) <= DET_TOL):
            raise DegenerateMetric(f"{self.name}: |det g| <= {DET_TOL}")
        return g

    def inverse_metric_at(self, p):
        return np.linalg.inv(self.metric_at(p))

    def inner(self, p, x, y):
        g = self.metric_at(p)
        return np.einsum("...ij,...i,...j->...", g, x, y)

    def metric_derivs(self, p):
        """dg[..., k, i, j] = d_k g_ij."""
        self._require(p, 2 * self.h1)
        return np.stack([numdiff.partial(self._raw_metric, p, k, self.h1) for k in range(2)], axis=-3)

    def metric_second_derivs(self, p):
        """ddg[..., k, l, i, j] = d_k d_l g_ij."""
        self._require(p, 2 * self.h2)
        d00 = numdiff.partial2(self._raw_metric, p, 0, 0, self.h2)
        d11 = numdiff.partial2(self._raw_metric, p, 1, 1, self.h2)
        d01 = numdiff.partial2(self._raw_metric, p, 0, 1, self.h2)
        return np.stack([np.stack([d00, d01], axis=-3), np.stack([d01, d11], axis=-3)], axis=-4)

    def christoffel_at(self, p):
        """Gamma[..., i, j, k] (symmetric in j, k)."""
        p = np.asarray(p, dtype=float)
        if self._christoffel is not None:
            self._require(p, 0.0)
            return np.broadcast_to(np.asarray(self._christoffel(p[..., 0], p[..., 1]), dtype=float),
                                   p.shape[:-1] + (2, 2, 2))
        return self.fd_christoffel_at(p)

    def fd_christoffel_at(self, p):
        ginv = self.inverse_metric_at(p)
        dg = self.metric_derivs(p)
        # first-kind symbols  [l, j, k] = 1/2 (d_j g_lk + d_k g_jl - d_l g_jk)
        first = 0.5 * (np.einsum("...jlk->...ljk", dg) + np.einsum("...kjl->...ljk", dg) - dg)
        return np.einsum("...il,...ljk->...ijk", ginv, first)

    def christoffel_derivs(self, p):
        """dG[..., a, i, j, k] = d_a Gamma^i_jk."""
        p = np.asarray(p, dtype=float)
        if self._christoffel is not None:
            self._require(p, 2 * self.h1)
            f = lambda q: np.broadcast_to(np.asarray(self._christoffel(q[..., 0], q[..., 1]), dtype=float),
                                          q.shape[:-1] + (2, 2, 2))
            return np.stack([numdiff.partial(f, p, a, self.h1) for a in range(2)], axis=-4)
        ginv = self.inverse_metric_at(p)
        dg = self.metric_derivs(p)
        ddg = self.metric_second_derivs(p)
        first = 0.5 * (np.einsum("...jlk->...ljk", dg) + np.einsum("...kjl->...ljk", dg) - dg)
        # d_a of the first-kind symbols
        dfirst = 0.5 * (np.einsum("...ajlk->...aljk", ddg) + np.einsum("...akjl->...aljk", ddg) - ddg)
        # d_a g^il = -g^ip (d_a g_pq) g^ql
        dginv = -np.einsum("...ip,...apq,...ql->...ail", ginv, dg, ginv)
        return (np.einsum("...ail,...ljk->...aijk", dginv, first)
                + np.einsum("...il,...aljk->...aijk", ginv, dfirst))

    def riemann_at(self, p):
        """R[..., m, l, a, b]: component m of R(d_a, d_b) d_l."""
        G = self.christoffel_at(p)
        dG = self.christoffel_derivs(p)
        # d_a Gamma^m_bl - d_b Gamma^m_al + Gamma^k_bl Gamma^m_ak - Gamma^k_al Gamma^m_bk
        t1 = np.einsum("...ambl->...mlab", dG)
        t3 = np.einsum("...kbl,...mak->...mlab", G, G)
        return t1 - np.swapaxes(t1, -1, -2) + t3 - np.swapaxes(t3, -1, -2)

    def riemann_lowered(self, p):
        """R[..., m, l, a, b] = g(R(d_a, d_b) d_l, d_m)."""
        return np.einsum("...mp,...plab->...mlab", self.metric_at(p), self.riemann_at(p))

    def curvature_at(self, p):
        p = np.asarray(p, dtype=float)
        g = self.metric_at(p)
        r1212 = self.riemann_lowered(p)[..., 0, 1, 0, 1]
        det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
        return CurvatureReport(point=p, sigma=r1212 / det, r1212=r1212)

    def sigma_at(self, p):
        return self.curvature_at(p).sigma


def apply_christoffel(G, X, Y):
    """Vector with components Gamma^i_jk X^j Y^k."""
    return np.einsum("...ijk,...j,...k->...i", G, X, Y)


def apply_riemann(R, X, Y, Z):
    """R(X, Y) Z from a tensor in ``riemann_at`` layout."""
    return np.einsum("...mlab,...a,...b,...l->...m", R, X, Y, Z)


def covariant_derivative(chart, gamma, V, t, h=numdiff.CURVE_STEP):
    """nabla_E V along ``gamma`` at parameter ``t`` with E = gamma'(t).

    ``gamma`` and ``V`` are vectorized callables of the curve parameter.
    """
    t = np.asarray(t, dtype=float)
    x = gamma(t)
    E = numdiff.deriv(gamma, t, h)
    return numdiff.deriv(V, t, h) + apply_christoffel(chart.christoffel_at(x), E, V(t))


# ---------------------------------------------------------------------------
# built-in charts

_BIG = 1e6


def _diag_metric(g11, g22):
    g11 = np.asarray(g11, dtype=float)
    g22 = np.asarray(g22, dtype=float)
    g11, g22 = np.broadcast_arrays(g11, g22)
    out = np.zeros(g11.shape + (2, 2))
    out[..., 0, 0] = g11
    out[..., 1, 1] = g22
    return out


def flat_lorentz():
    """g = du^2 - dv^2."""
    return SurfaceChart(
        "flat-lorentz",
        lambda u, v: _diag_metric(np.ones_like(u), -np.ones_like(v)),
        (1, -1),
        ((-_BIG, _BIG), (-_BIG, _BIG)),
        christoffel=lambda u, v: np.zeros(np.broadcast(u, v).shape + (2, 2, 2)),
    )


def _desitter_christoffel(u, v):
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    G = np.zeros(u.shape + (2, 2, 2))
    G[..., 0, 0, 1] = G[..., 0, 1, 0] = np.tanh(v)
    G[..., 1, 0, 0] = np.sinh(v) * np.cosh(v)
    return G


def de_sitter(r=1.0, closed_form=False):
    """Intrinsic chart of de Sitter space of radius r: g = r^2 cosh^2 v du^2 - r^2 dv^2.

    Sectional curvature is 1/r^2. ``closed_form`` switches the Christoffel
    symbols from finite differences to the exact expressions.
    """
    r = float(r)
    if not r > 0:
        raise ValueError(f"de Sitter radius must be positive, got {r}")
    return SurfaceChart(
        "de-sitter",
        lambda u, v: _diag_metric(r * r * np.cosh(v) ** 2, -r * r * np.ones_like(u)),
        (1, -1),
        ((-1e3, 1e3), (-20.0, 20.0)),
        christoffel=_desitter_christoffel if closed_form else None,
        params={"r": r},
    )


def _ads_christoffel(u, v):
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    G = np.zeros(u.shape + (2, 2, 2))
    G[..., 0, 1, 1] = np.sinh(u) * np.cosh(u)
    G[..., 1, 0, 1] = G[..., 1, 1, 0] = np.tanh(u)
    return G


def anti_de_sitter(closed_form=False):
    """AdS_2 chart g = du^2 - cosh^2 u dv^2 (sectional curvature -1)."""
    return SurfaceChart(
        "anti-de-sitter",
        lambda u, v: _diag_metric(np.ones_like(v), -np.cosh(u) ** 2),
        (1, -1),
        ((-20.0, 20.0), (-1e3, 1e3)),
        christoffel=_ads_christoffel if closed_form else None,
    )


def hyperbolic_plane():
    """Riemannian hyperbolic plane g = cosh^2 v du^2 + dv^2 (curvature -1).

    Not Lorentzian; provided for curvature cross-checks only.
    """
    return SurfaceChart(
        "hyperbolic",
        lambda u, v: _diag_metric(np.cosh(v) ** 2, np.ones_like(u)),
        (1, 1),
        ((-1e3, 1e3), (-20.0, 20.0)),
    )


def custom_chart(g11, g12, g22, signature=(1, -1), domain=((-10, 10), (-10, 10)), name="custom"):
    """Chart from three vectorized component functions of (u, v)."""

    def metric(u, v):
        a, b, c = (np.asarray(f(u, v), dtype=float) for f in (g11, g12, g22))
        a, b, c = np.broadcast_arrays(a, b, c)
        return np.stack([np.stack([a, b], -1), np.stack([b, c], -1)], -2)

    return SurfaceChart(name, metric, signature, domain)


def rescaled_chart(chart, a, b):
    """Same surface in coordinates (U, V) = (a u, b v), metric pulled back."""
    jac = np.array([1.0 / a, 1.0 / b])

    def metric(U, V):
        g = chart._raw_metric(np.stack(np.broadcast_arrays(U / a, V / b), -1))
        return g * jac[:, None] * jac[None, :]

    (u0, u1), (v0, v1) = chart.domain
    dom = (tuple(sorted((a * u0, a * u1))), tuple(sorted((b * v0, b * v1))))
    return SurfaceChart(f"{chart.name}-rescaled", metric, chart.signature, dom, params=chart.params)


def make_surface(name, **params):
    """Build one of the named charts.

    ``flat-lorentz``, ``de-sitter`` (r), ``anti-de-sitter``, ``hyperbolic``,
    ``custom`` (g11, g12, g22 callables plus optional signature and domain).
    """
    key = name.strip().lower()
    if key in ("flat-lorentz", "flat"):
        return flat_lorentz()
    if key in ("de-sitter", "desitter"):
        return de_sitter(params.get("r", 1.0), closed_form=params.get("closed_form", False))
    if key in ("anti-de-sitter", "ads"):
        return anti_de_sitter(closed_form=params.get("closed_form", False))
    if key in ("hyperbolic", "hyperbolic-plane"):
        return hyperbolic_plane()
    if key == "custom":
        try:
            g11, g12, g22 = params["g11"], params["g12"], params["g22"]
        except KeyError as exc:
            raise ValueError(f"custom surface needs g11, g12, g22 (missing {exc})") from None
        kw = {k: params[k] for k in ("signature", "domain") if k in params}
        return custom_chart(g11, g12, g22, **kw)
    raise ValueError(f"unknown surface {name!r}")
