"""Frenet apparatus of non-null curves.

Two-dimensional frames live on a surface chart; three-dimensional frames are
computed over any "3-space along a curve" object exposing

    velocity(t), inner(t, a, b), nabla(F, t),
    to_coords(t, v), from_coords(t, c), gram(t)

Both the ambient Minkowski space (``MinkowskiCurve3``) and lifted curves in the
unit tangent bundle (``bundle.LiftedCurve``) implement it. Frames are evaluated
pointwise with finite differences; the Frenet equations are returned as
residuals rather than integrated.
"""

from dataclasses import dataclass, field

import numpy as np

from . import numdiff
from .errors import GeodesicLift, NullFrameVector, NullNormal, NullSegment
from .lorentz import minkowski_inner, M3
from .surface import apply_christoffel

FRAME_TOL = 1e-8


class Curve:
    """Vectorized parametrized curve ``t -> (..., n)`` on ``[t0, t1]``.

    ``derivative`` is optional; without it velocities come from central
    differences with step ``h``.
    """

    def __init__(self, func, t0, t1, derivative=None, h=numdiff.CURVE_STEP):
        self.func = func
        self.t0 = float(t0)
        self.t1 = float(t1)
        self.derivative = derivative
        self.h = h

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def velocity(self, t):
        t = np.asarray(t, dtype=float)
        if self.derivative is not None:
            return np.asarray(self.derivative(t), dtype=float)
        return numdiff.deriv(self, t, self.h)

    def grid(self, n):
        return np.linspace(self.t0, self.t1, n)


def as_curve(gamma, t0=0.0, t1=1.0):
    return gamma if isinstance(gamma, Curve) else Curve(gamma, t0, t1)


def speed(chart, gamma, t):
    """Signed squared speed g(E, E) and the speed sqrt|g(E, E)|."""
    gamma = as_curve(gamma)
    E = gamma.velocity(t)
    q = chart.inner(gamma(t), E, E)
    return q, np.sqrt(np.abs(q))


def reparametrize_to_speed(chart, gamma, target_speed=1.0, tol=1e-9, check_samples=257):
    """Reparametrize ``gamma`` so that sqrt|g(gamma', gamma')| equals ``target_speed``.

    Arclength S(t) is a panelled Gauss-Legendre antiderivative of the speed; the
    inverse t(s) is found by Newton iteration per query, so the new curve stays
    smooth enough for nested finite differences. Returns a ``Curve`` on
    ``[0, S / target_speed]``.
    """
    gamma = as_curve(gamma)
    grid = gamma.grid(check_samples)
    q, _ = speed(chart, gamma, grid)
    if np.any(np.abs(q) <= tol) or np.any(np.sign(q) != np.sign(q[0])):
        raise NullSegment(f"curve speed vanishes or changes causal character (min |g(E,E)| = {np.abs(q).min():.3g})")

    def spd(t):
        return speed(chart, gamma, t)[1]

    arclen = numdiff.Antiderivative(spd, gamma.t0, gamma.t1)
    total = float(arclen.total)
    knots = np.linspace(gamma.t0, gamma.t1, 4 * check_samples)
    cum = arclen(knots)

    def t_of_s(s):
        s = np.asarray(s, dtype=float)
        target = s * target_speed
        t = np.interp(target, cum, knots)
        # linear extrapolation outside the tabulated range (finite-difference halo)
        lo, hi = target < 0, target > total
        t = np.where(lo, gamma.t0 + target / spd(gamma.t0), t)
        t = np.where(hi, gamma.t1 + (target - total) / spd(gamma.t1), t)
        for _ in range(50):
            step = (arclen(t) - target) / spd(t)
            t = t - step
            if np.all(np.abs(step) < 1e-13 * (1.0 + np.abs(t))):
                break
        return t

    new = Curve(lambda s: gamma(t_of_s(s)), 0.0, total / target_speed,
                derivative=lambda s: _rescaled_velocity(chart, gamma, t_of_s(s), target_speed))
    new.arclength = total
    new.t_of_s = t_of_s
    return new


def _rescaled_velocity(chart, gamma, t, target_speed):
    E = gamma.velocity(t)
    _, spd = speed(chart, gamma, t)
    return E * (target_speed / spd)[..., None]


def arclength(chart, gamma):
    """Total length int sqrt|g(E, E)| dt of ``gamma`` over its range."""
    gamma = as_curve(gamma)
    return float(numdiff.Antiderivative(lambda t: speed(chart, gamma, t)[1], gamma.t0, gamma.t1).total)


# ---------------------------------------------------------------------------
# surface frames


def unit_normal(chart, x, T):
    """Unit vector g-orthogonal to ``T`` at ``x``: J (g T), normalized."""
    w = np.einsum("...ij,...j->...i", chart.metric_at(x), T)
    n = np.stack([-w[..., 1], w[..., 0]], axis=-1)
    q = chart.inner(x, n, n)
    return n / np.sqrt(np.abs(q))[..., None]


def adapted_frame(chart, gamma, t):
    """Orthonormal frame (T, T_perp) along ``gamma`` and their g-signs."""
    gamma = as_curve(gamma)
    x = gamma(t)
    E = gamma.velocity(t)
    q = chart.inner(x, E, E)
    T = E / np.sqrt(np.abs(q))[..., None]
    n = unit_normal(chart, x, T)
    return T, n, np.sign(q), np.sign(chart.inner(x, n, n))


@dataclass
class FrenetApparatus2:
    t: np.ndarray
    T: np.ndarray
    N: np.ndarray
    kappa: np.ndarray
    eps1: np.ndarray
    eps2: np.ndarray
    geodesic: np.ndarray
    residuals: dict = field(default_factory=dict)


def _frenet2_fields(chart, gamma, tol):
    gamma = as_curve(gamma)

    def T(t):
        return adapted_frame(chart, gamma, t)[0]

    def rate(t):
        return speed(chart, gamma, t)[1]

    def dT(t):
        # nabla_T T in the arclength of gamma
        x = gamma(t)
        cov = numdiff.deriv(T, t, gamma.h) + apply_christoffel(chart.christoffel_at(x), gamma.velocity(t), T(t))
        return cov / rate(t)[..., None]

    def N(t):
        k = dT(t)
        x = gamma(t)
        q = chart.inner(x, k, k)
        kappa = np.sqrt(np.abs(q))
        n = unit_normal(chart, x, T(t))
        geo = kappa < tol
        safe = np.where(geo, 1.0, kappa)
        eps2 = np.where(geo, np.sign(chart.inner(x, n, n)), np.sign(q))
        # T' = eps2 kappa N
        N_curv = k / (eps2 * safe)[..., None]
        return np.where(geo[..., None], n, N_curv), kappa, eps2, geo

    return T, rate, dT, N


def frenet2_at(chart, gamma, t, tol=FRAME_TOL, residuals=False):
    """Frenet frame of a non-null surface curve (any regular parametrization).

    kappa >= 0 with T' = eps2 kappa N and N' = -eps1 kappa T (derivatives in
    arclength). Points with kappa < tol are flagged ``geodesic`` and get the
    unit normal of T as N.
    """
    gamma = as_curve(gamma)
    t = np.asarray(t, dtype=float)
    x = gamma(t)
    q, _ = speed(chart, gamma, t)
    if np.any(np.abs(q) <= tol):
        raise NullSegment("null tangent in frenet2_at")
    T, rate, dT, N = _frenet2_fields(chart, gamma, tol)
    Tv = T(t)
    k = dT(t)
    Nv, kappa, eps2, geo = N(t)
    if np.any(~geo & (np.abs(chart.inner(x, k, k)) < tol) & (np.linalg.norm(k, axis=-1) > np.sqrt(tol))):
        raise NullNormal("curvature vector is null")
    out = FrenetApparatus2(t=t, T=Tv, N=Nv, kappa=kappa, eps1=np.sign(q), eps2=eps2, geodesic=geo)
    if residuals:
        def Nf(s):
            return N(s)[0]
        dN = (numdiff.deriv(Nf, t, gamma.h)
              + apply_christoffel(chart.christoffel_at(x), gamma.velocity(t), Nv)) / rate(t)[..., None]
        out.residuals = {
            "row1": np.linalg.norm(k - (eps2 * kappa)[..., None] * Nv, axis=-1),
            "row2": np.linalg.norm(dN + (out.eps1 * kappa)[..., None] * Tv, axis=-1),
        }
    return out


# ---------------------------------------------------------------------------
# 3-dimensional frames


class MinkowskiCurve3:
    """Curve in flat ambient space with g = dx1^2 + dx2^2 - dx3^2."""

    def __init__(self, func, t0=0.0, t1=1.0, h=numdiff.CURVE_STEP):
        self.curve = Curve(func, t0, t1, h=h)
        self.h = h

    def velocity(self, t):
        return self.curve.velocity(t)

    def inner(self, t, a, b):
        return minkowski_inner(M3, a, b)

    def nabla(self, F, t):
        return numdiff.deriv(F, t, self.h)

    def to_coords(self, t, v):
        return v

    def from_coords(self, t, c):
        return c

    def gram(self, t):
        return np.broadcast_to(np.diag([1.0, 1.0, -1.0]), np.shape(t) + (3, 3))


@dataclass
class FrenetApparatus3:
    t: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    eps1: np.ndarray
    eps2: np.ndarray
    eps3: np.ndarray
    speed: np.ndarray
    geodesic: np.ndarray
    residuals: dict = field(default_factory=dict)


class _Frame3:
    """Frame fields of a curve in a 3-space, as functions of the parameter."""

    def __init__(self, space, tol):
        self.space = space
        self.tol = tol

    def speed(self, t):
        v = self.space.velocity(t)
        return np.sqrt(np.abs(self.space.inner(t, v, v)))

    def T(self, t):
        v = self.space.velocity(t)
        q = self.space.inner(t, v, v)
        if np.any(np.abs(q) <= self.tol):
            raise NullFrameVector("null tangent")
        return v / np.sqrt(np.abs(q))[..., None]

    def dT(self, t):
        return self.space.nabla(self.T, t) / self.speed(t)[..., None]

    def kappa(self, t):
        k = self.dT(t)
        return np.sqrt(np.abs(self.space.inner(t, k, k)))

    def N(self, t):
        k = self.dT(t)
        q = self.space.inner(t, k, k)
        kap = np.sqrt(np.abs(q))
        safe = np.where(kap <= self.tol, np.nan, kap)
        return k / safe[..., None]

    def B(self, t):
        Tv, Nv = self.T(t), self.N(t)
        c = np.cross(self.space.to_coords(t, Tv), self.space.to_coords(t, Nv))
        b = self.space.from_coords(t, np.linalg.solve(self.space.gram(t), c[..., None])[..., 0])
        q = self.space.inner(t, b, b)
        e12 = np.sign(self.space.inner(t, Tv, Tv)) * np.sign(self.space.inner(t, Nv, Nv))
        return b * (e12 / np.sqrt(np.abs(q)))[..., None]


def frenet3_at(space, t, tol=FRAME_TOL, residuals=False, strict=True):
    """Frenet apparatus (T, N, B, kappa, tau) of a non-null curve in a 3-space.

    T' = kappa N,  N' = -eps1 eps2 kappa T + tau B,  B' = -eps2 eps3 tau N
    with derivatives in arclength, kappa >= 0 and eps3 = g(B, B). The binormal
    is oriented so that T ^ N = eps1 eps2 B in ambient Minkowski space.

    Points with kappa <= tol raise ``GeodesicLift`` when ``strict``; otherwise
    they are flagged and their frame entries are NaN.
    """
    t = np.asarray(t, dtype=float)
    fr = _Frame3(space, tol)
    Tv = fr.T(t)
    k = fr.dT(t)
    qk = space.inner(t, k, k)
    kappa = np.sqrt(np.abs(qk))
    geo = kappa <= tol
    if strict and np.any(geo):
        raise GeodesicLift(f"curvature vanishes (min kappa = {kappa.min():.3g})")
    if np.any(~geo & (np.abs(qk) <= tol * tol) & (np.linalg.norm(k, axis=-1) > tol)):
        raise NullFrameVector("principal normal is null")
    Nv = fr.N(t)
    Bv = fr.B(t)
    spd = fr.speed(t)
    eps1 = np.sign(space.inner(t, Tv, Tv))
    eps2 = np.sign(qk)
    eps3 = np.sign(space.inner(t, Bv, Bv))
    dN = space.nabla(fr.N, t) / spd[..., None]
    tau = eps3 * space.inner(t, dN, Bv)
    out = FrenetApparatus3(t=t, T=Tv, N=Nv, B=Bv, kappa=kappa, tau=tau, eps1=eps1,
                           eps2=eps2, eps3=eps3, speed=spd, geodesic=geo)
    if residuals:
        dB = space.nabla(fr.B, t) / spd[..., None]
        e = lambda a: a[..., None]
        out.residuals = {
            "row1": np.linalg.norm(k - e(kappa) * Nv, axis=-1),
            "row2": np.linalg.norm(dN + e(eps1 * eps2 * kappa) * Tv - e(tau) * Bv, axis=-1),
            "row3": np.linalg.norm(dB + e(eps2 * eps3 * tau) * Nv, axis=-1),
        }
    return out
