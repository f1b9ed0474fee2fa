"""Finite-difference and quadrature helpers shared by the geometry modules.

All stencils are fourth-order central differences. Functions passed in must
accept an array of parameters and return an array whose leading dimensions
match it, so that nested differentiation stays vectorized.
"""

import numpy as np

# default parameter step for derivatives along curves
CURVE_STEP = 1.0 / 512.0

_D1 = ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0))
_D2 = ((-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0))


def deriv(f, t, h=CURVE_STEP):
    """d f / dt at ``t``."""
    t = np.asarray(t, dtype=float)
    acc = 0.0
    for k, c in _D1:
        acc = acc + c * np.asarray(f(t + k * h))
    return acc / (12.0 * h)


def partial(f, p, axis, h):
    """Partial derivative of ``f(p)`` along coordinate ``axis`` of the points ``p`` (..., n)."""
    p = np.asarray(p, dtype=float)
    e = np.zeros(p.shape[-1])
    e[axis] = h
    acc = 0.0
    for k, c in _D1:
        acc = acc + c * np.asarray(f(p + k * e))
    return acc / (12.0 * h)


def partial2(f, p, a, b, h):
    """Second partial derivative d^2 f / dp_a dp_b."""
    p = np.asarray(p, dtype=float)
    if a == b:
        e = np.zeros(p.shape[-1])
        e[a] = h
        acc = 0.0
        for k, c in _D2:
            acc = acc + c * np.asarray(f(p + k * e))
        return acc / (12.0 * h * h)
    return partial(lambda q: partial(f, q, b, h), p, a, h)


# 20-point Gauss-Legendre rule on [-1, 1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


class Antiderivative:
    """Smooth cumulative integral F(t) = int_{t0}^{t} f(s) ds.

    The range is split into panels of width at most ``panel``; each query adds
    the tabulated whole panels to a Gauss-Legendre integral over the partial
    panel, so F is accurate to roundoff and smooth in ``t`` (safe to difference).
    ``f`` must be vectorized.
    """

    def __init__(self, f, t0, t1, panel=0.125):
        self.f = f
        self.t0 = float(t0)
        n = max(1, int(np.ceil(abs(t1 - t0) / panel)))
        # pad so queries slightly outside [t0, t1] still land in a panel
        self.width = (t1 - t0) / n
        self.knots = self.t0 + self.width * np.arange(-2, n + 3)
        left, right = self.knots[:-1], self.knots[1:]
        vals = self._gl(left, right)
        cum = np.concatenate([[0.0], np.cumsum(vals)])
        self.cum = cum - cum[2]  # F(t0) = 0

    def _gl(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes = mid[..., None] + half[..., None] * _GL_X
        vals = np.asarray(self.f(nodes))
        return half * np.sum(vals * _GL_W, axis=-1)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.floor((t - self.knots[0]) / self.width).astype(int)
        idx = np.clip(idx, 0, len(self.knots) - 2)
        base = self.knots[idx]
        return self.cum[idx] + self._gl(base, t)

    @property
    def total(self):
        return self(self.knots[-3])
