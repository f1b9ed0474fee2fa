"""Unit fiber fields X along a base curve.

Fibers are written in the adapted frame (T, n) of the base curve. A fiber of
the same causal character as T is ``cosh(phi) T + sinh(phi) n``; otherwise it is
``sinh(phi) T + cosh(phi) n``. Either way dX/dphi = X_perp and

    nabla_E X = (phi' + rho) X_perp,     rho = eps_n g(nabla_E T, n).

The prescribed-angle constructions solve for phi(t) so that the lifted curve
makes a given g1-angle with the Reeb field. The ODE solution is resampled as a
Chebyshev interpolant, which keeps the fiber smooth for nested differences.
"""

import numpy as np
from scipy.integrate import solve_ivp

from . import numdiff
from .errors import FiberNotUnit, GeometryError, OutOfRange
from .frenet import Curve, adapted_frame, as_curve
from .lorentz import AngleLaw
from .surface import apply_christoffel

CAUSAL = {"spacelike": 1.0, "timelike": -1.0}


def _eps(causal):
    if isinstance(causal, str):
        try:
            return CAUSAL[causal.strip().lower()]
        except KeyError:
            raise ValueError(f"causal must be spacelike or timelike, got {causal!r}") from None
    return float(np.sign(causal))


class BaseFrame:
    """Adapted frame data of a base curve as functions of the parameter."""

    def __init__(self, chart, gamma):
        self.chart = chart
        self.gamma = as_curve(gamma)
        t = self.gamma.grid(5)
        _, _, eT, en = adapted_frame(chart, self.gamma, t)
        if np.any(eT != eT[0]):
            raise GeometryError("base curve changes causal character")
        self.eps_T = float(eT[0])
        self.eps_n = float(en[0])

    def T(self, t):
        return adapted_frame(self.chart, self.gamma, t)[0]

    def n(self, t):
        return adapted_frame(self.chart, self.gamma, t)[1]

    def E(self, t):
        return self.gamma.velocity(t)

    def rho(self, t):
        t = np.asarray(t, dtype=float)
        x = self.gamma(t)
        dT = numdiff.deriv(self.T, t, self.gamma.h) + apply_christoffel(
            self.chart.christoffel_at(x), self.E(t), self.T(t))
        return self.eps_n * self.chart.inner(x, dT, self.n(t))

    def gEE(self, t):
        E = self.E(t)
        return self.chart.inner(self.gamma(t), E, E)

    def fiber(self, phi, eps_X):
        """Fiber field for an angle function ``phi(t)``."""
        same = eps_X == self.eps_T

        def X(t):
            t = np.asarray(t, dtype=float)
            p = np.asarray(phi(t), dtype=float)[..., None]
            a, b = (np.cosh(p), np.sinh(p)) if same else (np.sinh(p), np.cosh(p))
            return a * self.T(t) + b * self.n(t)

        return X

    def gEX(self, t, phi, eps_X):
        """g(E, X) for the fiber at angle ``phi``: |E| eps_T times cosh or sinh."""
        spd = np.sqrt(np.abs(self.gEE(t)))
        law = np.cosh if eps_X == self.eps_T else np.sinh
        return spd * self.eps_T * law(phi)


def tangent_fiber(chart, gamma):
    """X = E / |E|."""
    gamma = as_curve(gamma)
    return Curve(lambda t: adapted_frame(chart, gamma, t)[0], gamma.t0, gamma.t1, h=gamma.h)


def normal_fiber(chart, gamma, sign=1.0):
    """X = +-n, the unit normal of the base curve (a Legendre fiber)."""
    gamma = as_curve(gamma)
    return Curve(lambda t: sign * adapted_frame(chart, gamma, t)[1], gamma.t0, gamma.t1, h=gamma.h)


def frame_angle_fiber(chart, gamma, phi, causal="spacelike"):
    """Fiber at hyperbolic angle ``phi(t)`` from the adapted frame."""
    frame = BaseFrame(chart, gamma)
    g = frame.gamma
    return Curve(frame.fiber(phi, _eps(causal)), g.t0, g.t1, h=g.h)


def _padded(gamma):
    pad = 0.05 * (gamma.t1 - gamma.t0) + 8 * gamma.h
    return gamma.t0 - pad, gamma.t1 + pad


def _chebyshev(f, lo, hi, tol=1e-12, max_deg=256):
    """Chebyshev interpolant of a scalar function, refined until the tail is negligible."""
    deg = 32
    while True:
        cheb = np.polynomial.Chebyshev.interpolate(f, deg, domain=[lo, hi])
        scale = max(1.0, np.abs(cheb.coef).max())
        if np.abs(cheb.coef[-4:]).max() < tol * scale or deg >= max_deg:
            return cheb
        deg *= 2


def parallel_fiber(chart, gamma, phi0=0.0, causal="spacelike"):
    """Parallel unit field: phi' = -rho, phi(t0) = phi0."""
    frame = BaseFrame(chart, gamma)
    g = frame.gamma
    lo, hi = _padded(g)
    rho = numdiff.Antiderivative(frame.rho, lo, hi)
    r0 = rho(g.t0)
    phi = _chebyshev(lambda t: phi0 - (rho(t) - r0), lo, hi)
    out = Curve(frame.fiber(phi, _eps(causal)), g.t0, g.t1, h=g.h)
    out.phi = phi
    return out


def prescribed_angle_fiber(chart, gamma, L_of_t, phi0, causal="spacelike", branch=1.0,
                           rtol=1e-12, atol=1e-13):
    """Fiber whose lift satisfies g1(T~, xi) = L(t) with T~ g1-unit.

    With W = omega X_perp and g(X_perp, X_perp) = -eps_X the lift speed is
    lambda^2 = |g(E, E) - eps_X omega^2| / 4, and g1(T~, xi) = g(E, X) / (2 lambda).
    Solving for omega (lift of the same causal character as the base) gives

        omega^2 = eps_X (g(E, E) - sgn(g(E, E)) g(E, X)^2 / L^2)
        phi' = branch sqrt(omega^2) - rho.

    Raises ``OutOfRange`` when omega^2 turns negative (no such fiber).
    """
    eps_X = _eps(causal)
    frame = BaseFrame(chart, gamma)
    g = frame.gamma
    lo, hi = _padded(g)

    def omega2(t, phi):
        gee = frame.gEE(t)
        gex = frame.gEX(t, phi, eps_X)
        L = np.asarray(L_of_t(t), dtype=float)
        if np.any(np.abs(L) < 1e-12):
            raise OutOfRange("prescribed g1(T~, xi) vanishes; use the normal fiber for Legendre lifts")
        return eps_X * (gee - np.sign(gee) * gex ** 2 / L ** 2)

    def rhs(t, y):
        w2 = float(omega2(np.array(t), y[0]))
        if w2 < -1e-12:
            raise OutOfRange(f"no fiber with the prescribed angle at t = {t:.6g} (omega^2 = {w2:.3g})")
        return [branch * np.sqrt(max(w2, 0.0)) - float(frame.rho(np.array(t)))]

    def solve(t_end):
        return solve_ivp(rhs, (g.t0, t_end), [phi0], method="DOP853", rtol=rtol, atol=atol,
                         dense_output=True)

    L0 = float(np.asarray(L_of_t(np.array(g.t0))))
    if np.sign(frame.gEX(np.array(g.t0), phi0, eps_X)) != np.sign(L0):
        raise OutOfRange(f"g1(T~, xi) = {L0:g} has the wrong sign for this fiber (g(E, X) has the opposite sign)")
    fwd, bwd = solve(hi), solve(lo)
    for sol in (fwd, bwd):
        if not sol.success:
            raise GeometryError(f"fiber ODE failed: {sol.message}")

    def phi_dense(t):
        t = np.asarray(t, dtype=float)
        return np.where(t >= g.t0, fwd.sol(np.maximum(t, g.t0))[0], bwd.sol(np.minimum(t, g.t0))[0])

    phi = _chebyshev(phi_dense, lo, hi)
    out = Curve(frame.fiber(phi, eps_X), g.t0, g.t1, h=g.h)
    out.phi = phi
    return out


def constant_angle_fiber(chart, gamma, c, phi0=0.0, causal="spacelike", branch=1.0):
    """Slant fiber: g1(T~, xi) = c along the whole lift."""
    return prescribed_angle_fiber(chart, gamma, lambda t: np.full(np.shape(t), float(c)),
                                  phi0, causal=causal, branch=branch)


def linear_angle_fiber(chart, gamma, a, b, law, phi0=0.0, causal="spacelike", branch=1.0):
    """Fiber with Lorentzian angle theta = a t + b under ``law``."""
    law = law if isinstance(law, AngleLaw) else AngleLaw.parse(law)
    return prescribed_angle_fiber(chart, gamma, lambda t: law.evaluate(a * np.asarray(t) + b),
                                  phi0, causal=causal, branch=branch)


def component_fiber(chart, gamma, comps, normalize=True, tol=1e-8):
    """Fiber from chart components ``comps(t) -> (..., 2)``, optionally normalized."""
    gamma = as_curve(gamma)

    def X(t):
        t = np.asarray(t, dtype=float)
        v = np.asarray(comps(t), dtype=float)
        if not normalize:
            return v
        q = chart.inner(gamma(t), v, v)
        if np.any(np.abs(q) <= tol):
            raise FiberNotUnit("fiber components are null")
        return v / np.sqrt(np.abs(q))[..., None]

    return Curve(X, gamma.t0, gamma.t1, h=gamma.h)
