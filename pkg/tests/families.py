"""Curve and fiber families shared by the tests."""

import numpy as np

from nslant import bundle, fibers, surface
from nslant.frenet import Curve

V0 = 0.3


def line(u0, v0, du, dv, t0=0.0, t1=1.0):
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.stack([u0 + du * t, v0 + dv * t], -1)

    def d(t):
        t = np.asarray(t, dtype=float)
        return np.stack(np.broadcast_arrays(du + 0 * t, dv + 0 * t), -1)

    return Curve(f, t0, t1, derivative=d)


def circle(v0=V0, speed=2.0):
    """Spacelike circle v = v0 of de Sitter(1) with base speed ``speed``."""
    return line(0.0, v0, speed / np.cosh(v0), 0.0, -0.5, 0.5)


def timelike_curve(k=0.5):
    """Curve (k * 2 atan(tanh(t/2)), t) of de Sitter(1): g(E, E) = k^2 - 1, so timelike for k < 1.

    The window avoids the inflection at t = 0.
    """
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.stack([k * 2 * np.arctan(np.tanh(t / 2)), t], -1)

    return Curve(f, 0.1, 0.7)


def pseudo_circle(t0=0.0, t1=1.0):
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.cosh(t), np.sinh(t)], -1)

    return Curve(f, t0, t1)


def desitter_slant(c, phi0=0.3):
    ds = surface.de_sitter(1.0)
    g = circle()
    return bundle.lift_curve(ds, g, fibers.constant_angle_fiber(ds, g, c, phi0=phi0))


def desitter_legendre(k):
    ds = surface.de_sitter(1.0)
    g = timelike_curve(k)
    return bundle.lift_curve(ds, g, fibers.normal_fiber(ds, g))


def desitter_equator(causal="timelike"):
    """Fiber at frame angle 0.3 + 0.5 t over the equator: neither slant nor Legendre."""
    ds = surface.de_sitter(1.0)
    g = line(0.0, 0.0, 2.0, 0.0, -1.0, 1.0)
    return bundle.lift_curve(ds, g, fibers.frame_angle_fiber(ds, g, lambda t: 0.3 + 0.5 * np.asarray(t), causal))


def desitter_wavy():
    """Generic lift: non-geodesic base, non-linear fiber angle."""
    ds = surface.de_sitter(1.0)
    g = circle()
    return bundle.lift_curve(ds, g, fibers.frame_angle_fiber(ds, g, lambda t: 0.2 + 0.4 * np.sin(2 * np.asarray(t)),
                                                             "spacelike"))


def flat_generic():
    fl = surface.flat_lorentz()
    g = pseudo_circle()
    return bundle.lift_curve(fl, g, fibers.frame_angle_fiber(fl, g, lambda t: 0.2 + 0.7 * np.asarray(t) ** 2,
                                                             "spacelike"))


def ads_generic():
    ads = surface.anti_de_sitter()
    g = line(0.2, 0.0, 0.3, 1.0)
    return bundle.lift_curve(ads, g, fibers.frame_angle_fiber(ads, g, lambda t: 0.1 * np.sin(3 * np.asarray(t)),
                                                              "spacelike"))
