"""Unit tangent bundle T1M of a surface chart with its Sasaki contact structure.

A tangent vector of T1M at (x, u) is stored as its horizontal part A and its
tangential part B (a base vector g-orthogonal to u), packed as the 4-vector
``[A1, A2, B1, B2]``. The tangential lift of an arbitrary base vector Y is
``Y - eps_u g(Y, u) u``; with eps_u = g(u, u) this is g-orthogonal to u for
both causal characters of the fiber.

Metrics::

    g1s(A^h + B^t, C^h + D^t) = g(A, C) + g(B, D) - eps_u g(B, u) g(D, u)
    g1 = g1s / 4

Reeb field: xi = 2 u^h (default, ``paper-2xh``) or u^h / 2 (``paper-half``).
"""

from dataclasses import dataclass

import numpy as np

from . import numdiff
from .errors import FiberNotUnit, NullLift, NullVector
from .frenet import Curve, as_curve, unit_normal
from .surface import apply_christoffel, apply_riemann

UNIT_TOL = 1e-8
XI_SCALE = {"paper-2xh": 2.0, "paper-half": 0.5}


def xi_scale(convention):
    try:
        return XI_SCALE[convention]
    except KeyError:
        raise ValueError(f"unknown xi convention {convention!r} (choose from {sorted(XI_SCALE)})") from None


@dataclass(frozen=True)
class BundlePoint:
    x: np.ndarray
    u: np.ndarray
    eps_u: np.ndarray


@dataclass(frozen=True)
class BundleTangent:
    h: np.ndarray
    t: np.ndarray

    def pack(self):
        return np.concatenate([self.h, self.t], axis=-1)

    @classmethod
    def unpack(cls, v):
        v = np.asarray(v, dtype=float)
        return cls(h=v[..., :2], t=v[..., 2:])

    def __add__(self, other):
        return BundleTangent(self.h + other.h, self.t + other.t)

    def __sub__(self, other):
        return BundleTangent(self.h - other.h, self.t - other.t)

    def __neg__(self):
        return BundleTangent(-self.h, -self.t)

    def scale(self, c):
        c = np.asarray(c, dtype=float)[..., None]
        return BundleTangent(c * self.h, c * self.t)


def bundle_point(chart, x, u, tol=1e-9):
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    q = chart.inner(x, u, u)
    eps = np.sign(q)
    if np.any(np.abs(q - eps) > tol):
        raise FiberNotUnit(f"g(u, u) = {q} is not +-1")
    return BundlePoint(x=x, u=u, eps_u=eps)


def random_bundle_points(chart, n, rng, box=((-2.0, 2.0), (-1.5, 1.5))):
    """Random points of T1M: uniform chart point, random non-null unit fiber vector."""
    x = np.column_stack([rng.uniform(*box[0], n), rng.uniform(*box[1], n)])
    u = rng.normal(size=(n, 2))
    q = chart.inner(x, u, u)
    keep = np.abs(q) > 1e-2
    x, u, q = x[keep], u[keep], q[keep]
    return bundle_point(chart, x, u / np.sqrt(np.abs(q))[:, None])


def tangential_lift(chart, x, Y, u, eps_u):
    """Tangential lift Y^t = Y - eps_u g(Y, u) u (as a base vector)."""
    return Y - (eps_u * chart.inner(x, Y, u))[..., None] * u


def sasaki_metric(chart, p, A, B, scaled=False):
    """g1s(A, B), or g1 = g1s / 4 with ``scaled``."""
    x, u, eps = p.x, p.u, p.eps_u
    val = (chart.inner(x, A.h, B.h) + chart.inner(x, A.t, B.t)
           - eps * chart.inner(x, A.t, u) * chart.inner(x, B.t, u))
    return 0.25 * val if scaled else val


class ContactData:
    """Contact metric structure of T1M at a point.

    ``primed`` gives (xi', eta', phi', g1s) with xi' = u^h; otherwise
    (xi, eta, phi, g1) with g1 = g1s / 4, eta = eta' / 2 and xi scaled by the
    convention. eta' is eps_u g1s(., xi') so that eta'(xi') = 1 for both fiber
    characters.
    """

    def __init__(self, chart, p, convention="paper-2xh", primed=False):
        self.chart = chart
        self.p = p
        self.primed = primed
        self.convention = convention
        c = 1.0 if primed else xi_scale(convention)
        self.xi = BundleTangent(h=c * p.u, t=np.zeros_like(p.u))

    def g(self, A, B):
        return sasaki_metric(self.chart, self.p, A, B, scaled=not self.primed)

    def eta(self, A):
        # eta'(A) = eps_u g1s(A, u^h) = eps_u g(A.h, u)
        val = self.p.eps_u * self.chart.inner(self.p.x, A.h, self.p.u)
        return val if self.primed else 0.5 * val

    def phi(self, A):
        """phi(X^h) = X^t,  phi(X^t) = -X^h + eta'(X^h) xi'."""
        x, u, eps = self.p.x, self.p.u, self.p.eps_u
        new_t = tangential_lift(self.chart, x, A.h, u, eps)
        # B is tangential, so eta'(B^h) u^h only removes roundoff along u
        new_h = -A.t + (eps * self.chart.inner(x, A.t, u))[..., None] * u
        return BundleTangent(h=new_h, t=new_t)


def contact_at(chart, p, convention="paper-2xh", primed=False):
    return ContactData(chart, p, convention=convention, primed=primed)


class LiftedCurve:
    """Curve t -> (gamma(t), X(t)) in T1M with g(X, X) = eps_X.

    Implements the 3-space protocol used by ``frenet.frenet3_at`` with the
    metric g1 = g1s / 4 and the Levi-Civita connection of g1s restricted to T1M.
    """

    def __init__(self, chart, gamma, X, eps_X, xi_convention="paper-2xh", h=None):
        self.chart = chart
        self.gamma = as_curve(gamma)
        self.X = X if isinstance(X, Curve) else Curve(X, self.gamma.t0, self.gamma.t1)
        self.eps_X = float(eps_X)
        self.xi_convention = xi_convention
        self.xi_c = xi_scale(xi_convention)
        self.h = self.gamma.h if h is None else h

    @property
    def t0(self):
        return self.gamma.t0

    @property
    def t1(self):
        return self.gamma.t1

    def grid(self, n):
        return self.gamma.grid(n)

    # base data -----------------------------------------------------------
    def E(self, t):
        return self.gamma.velocity(t)

    def W(self, t):
        """nabla_E X, projected orthogonally to X."""
        t = np.asarray(t, dtype=float)
        x = self.gamma(t)
        Xv = self.X(t)
        w = self.X.velocity(t) + apply_christoffel(self.chart.christoffel_at(x), self.E(t), Xv)
        return tangential_lift(self.chart, x, w, Xv, self.eps_X)

    def raw_W(self, t):
        """nabla_E X without the projection (for the orthogonality gate)."""
        t = np.asarray(t, dtype=float)
        x = self.gamma(t)
        return self.X.velocity(t) + apply_christoffel(self.chart.christoffel_at(x), self.E(t), self.X(t))

    def point(self, t):
        return BundlePoint(x=self.gamma(t), u=self.X(t), eps_u=np.full(np.shape(t), self.eps_X))

    # 3-space protocol ----------------------------------------------------
    def velocity(self, t):
        return np.concatenate([self.E(t), self.W(t)], axis=-1)

    def inner(self, t, a, b):
        x = self.gamma(t)
        u = self.X(t)
        val = (self.chart.inner(x, a[..., :2], b[..., :2]) + self.chart.inner(x, a[..., 2:], b[..., 2:])
               - self.eps_X * self.chart.inner(x, a[..., 2:], u) * self.chart.inner(x, b[..., 2:], u))
        return 0.25 * val

    def nabla(self, F, t):
        """Covariant derivative along the lift (parameter t) of a packed field F(t).

        Horizontal part:   D_t A + R(u, B) E / 2 + R(u, W) A / 2
        Tangential part:   D_t B - R(E, A) u / 2, projected orthogonally to u
        where D_t is the base covariant derivative along gamma, E = gamma',
        u = X and W = nabla_E X.
        """
        t = np.asarray(t, dtype=float)
        x = self.gamma(t)
        u = self.X(t)
        E = self.E(t)
        W = self.W(t)
        Fv = np.asarray(F(t))
        dF = numdiff.deriv(F, t, self.h)
        A, B = Fv[..., :2], Fv[..., 2:]
        G = self.chart.christoffel_at(x)
        R = self.chart.riemann_at(x)
        DA = dF[..., :2] + apply_christoffel(G, E, A)
        DB = dF[..., 2:] + apply_christoffel(G, E, B)
        hpart = DA + 0.5 * apply_riemann(R, u, B, E) + 0.5 * apply_riemann(R, u, W, A)
        tpart = DB - 0.5 * apply_riemann(R, E, A, u)
        tpart = tangential_lift(self.chart, x, tpart, u, self.eps_X)
        return np.concatenate([hpart, tpart], axis=-1)

    def _fiber_normal(self, t):
        x = self.gamma(t)
        return unit_normal(self.chart, x, self.X(t))

    def to_coords(self, t, v):
        x = self.gamma(t)
        n = self._fiber_normal(t)
        en = np.sign(self.chart.inner(x, n, n))
        b = en * self.chart.inner(x, v[..., 2:], n)
        return np.concatenate([v[..., :2], b[..., None]], axis=-1)

    def from_coords(self, t, c):
        n = self._fiber_normal(t)
        return np.concatenate([c[..., :2], c[..., 2:3] * n], axis=-1)

    def gram(self, t):
        x = self.gamma(t)
        n = self._fiber_normal(t)
        g = self.chart.metric_at(x)
        out = np.zeros(np.shape(t) + (3, 3))
        out[..., :2, :2] = g
        out[..., 2, 2] = self.chart.inner(x, n, n)
        return 0.25 * out

    # contact data along the curve ----------------------------------------
    def xi(self, t):
        u = self.X(t)
        return np.concatenate([self.xi_c * u, np.zeros_like(u)], axis=-1)

    def speed(self, t):
        v = self.velocity(t)
        return np.sqrt(np.abs(self.inner(t, v, v)))

    def lift_sign(self, t):
        v = self.velocity(t)
        return np.sign(self.inner(t, v, v))


def nabla1_along(lifted, F, t):
    """Sasaki covariant derivative of the packed field ``F`` along ``lifted``."""
    return lifted.nabla(F, t)


def lift_curve(chart, gamma, X, eps_X=None, xi_convention="paper-2xh", check_samples=129,
               tol=UNIT_TOL, arclength=False):
    """Lift (gamma, X) to T1M, validating the fiber and the causal character of the lift.

    The lifted tangent is E^h + (nabla_E X)^t. With ``arclength`` the curve is
    reparametrized so that the lift has unit g1-speed.
    """
    gamma = as_curve(gamma)
    X = X if isinstance(X, Curve) else Curve(X, gamma.t0, gamma.t1, h=gamma.h)
    grid = gamma.grid(check_samples)
    x = gamma(grid)
    q = chart.inner(x, X(grid), X(grid))
    if eps_X is None:
        eps_X = float(np.sign(q[0]))
    if np.any(np.abs(q - eps_X) > tol):
        raise FiberNotUnit(f"max |g(X, X) - eps_X| = {np.abs(q - eps_X).max():.3g}")
    lifted = LiftedCurve(chart, gamma, X, eps_X, xi_convention=xi_convention)
    v = lifted.velocity(grid)
    lq = lifted.inner(grid, v, v)
    if np.any(np.abs(lq) <= tol) or np.any(np.sign(lq) != np.sign(lq[0])):
        raise NullLift(f"g1(T~, T~) vanishes or changes sign (min |g1| = {np.abs(lq).min():.3g})")
    if arclength:
        lifted = _arclength_lift(lifted)
    return lifted


def _arclength_lift(lifted):
    """Reparametrize a lift by its g1-arclength."""
    arclen = numdiff.Antiderivative(lifted.speed, lifted.t0, lifted.t1)
    total = float(arclen.total)
    knots = np.linspace(lifted.t0, lifted.t1, 1025)
    cum = arclen(knots)

    def t_of_s(s):
        s = np.asarray(s, dtype=float)
        t = np.interp(s, cum, knots)
        t = np.where(s < 0, lifted.t0 + s / lifted.speed(lifted.t0), t)
        t = np.where(s > total, lifted.t1 + (s - total) / lifted.speed(lifted.t1), t)
        for _ in range(50):
            step = (arclen(t) - s) / lifted.speed(t)
            t = t - step
            if np.all(np.abs(step) < 1e-13 * (1.0 + np.abs(t))):
                break
        return t

    g = Curve(lambda s: lifted.gamma(t_of_s(s)), 0.0, total,
              derivative=lambda s: lifted.E(t_of_s(s)) / lifted.speed(t_of_s(s))[..., None],
              h=lifted.h)
    X = Curve(lambda s: lifted.X(t_of_s(s)), 0.0, total, h=lifted.h)
    out = LiftedCurve(lifted.chart, g, X, lifted.eps_X, xi_convention=lifted.xi_convention, h=lifted.h)
    out.t_of_s = t_of_s
    return out


def check_unit(chart, x, u, tol=UNIT_TOL):
    q = chart.inner(x, u, u)
    if np.any(np.abs(np.abs(q) - 1.0) > tol):
        raise NullVector(f"fiber vector not unit: g(u,u) = {q}")
    return np.sign(q)
