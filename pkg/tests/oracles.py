"""Independent reference computations.

``CoordinateBundle`` treats the spacelike unit tangent bundle of a diagonal
Lorentzian chart g = a du^2 - b dv^2 as an ordinary 3-manifold with
coordinates (u, v, phi), where the fiber vector is

    X = cosh(phi) e1 + sinh(phi) e2,   e1 = d_u / sqrt(a),  e2 = d_v / sqrt(b).

The Sasaki metric is pulled back to these coordinates, its Christoffel
symbols come from plain finite differences of the pulled-back metric, and
the Frenet data of a lift follow from textbook formulas. Nothing here calls
the package's connection code; only the chart metric is shared.
"""

import numpy as np

H_BASE = 1e-4
H_META = 1e-3


def _d(f, p, i, h):
    e = np.zeros(len(p))
    e[i] = h
    return (8 * (f(p + e) - f(p - e)) - (f(p + 2 * e) - f(p - 2 * e))) / (12 * h)


class CoordinateBundle:
    def __init__(self, chart):
        self.chart = chart

    def g(self, x):
        return self.chart.metric_at(np.asarray(x, dtype=float))

    def base_christoffel(self, x):
        x = np.asarray(x, dtype=float)
        gi = np.linalg.inv(self.g(x))
        dg = np.array([_d(self.g, x, k, H_BASE) for k in range(2)])  # dg[k, i, j]
        G = np.zeros((2, 2, 2))
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    G[i, j, k] = 0.5 * sum(gi[i, l] * (dg[j, l, k] + dg[k, j, l] - dg[l, j, k]) for l in range(2))
        return G

    def frame(self, x):
        g = self.g(x)
        return np.array([1 / np.sqrt(g[0, 0]), 0.0]), np.array([0.0, 1 / np.sqrt(-g[1, 1])])

    def fiber(self, p):
        e1, e2 = self.frame(p[:2])
        return np.cosh(p[2]) * e1 + np.sinh(p[2]) * e2

    def fiber_normal(self, p):
        e1, e2 = self.frame(p[:2])
        return np.sinh(p[2]) * e1 + np.cosh(p[2]) * e2

    def _parts(self, p):
        """Horizontal and vertical parts of the three coordinate vectors."""
        x = p[:2]
        X = self.fiber(p)
        G = self.base_christoffel(x)
        hs, vs = [], []
        for i in range(2):
            dX = _d(lambda q: self.fiber(np.concatenate([q, p[2:]])), x, i, H_BASE)
            e = np.eye(2)[i]
            hs.append(e)
            vs.append(dX + np.einsum("ijk,j,k->i", G, e, X))
        hs.append(np.zeros(2))
        vs.append(self.fiber_normal(p))
        return hs, vs

    def metric(self, p):
        """g1 = g1s / 4 in (u, v, phi) coordinates."""
        p = np.asarray(p, dtype=float)
        g = self.g(p[:2])
        hs, vs = self._parts(p)
        M = np.array([[h1 @ g @ h2 + v1 @ g @ v2 for h2, v2 in zip(hs, vs)] for h1, v1 in zip(hs, vs)])
        return 0.25 * M

    def christoffel(self, p):
        p = np.asarray(p, dtype=float)
        Mi = np.linalg.inv(self.metric(p))
        dM = np.array([_d(self.metric, p, k, H_META) for k in range(3)])
        G = np.zeros((3, 3, 3))
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    G[a, b, c] = 0.5 * sum(Mi[a, d] * (dM[b, d, c] + dM[c, d, b] - dM[d, b, c]) for d in range(3))
        return G

    def xi(self, p, scale=2.0):
        """Coordinates of xi = scale * X^h."""
        x = p[:2]
        X = self.fiber(p)
        G = self.base_christoffel(x)
        n = self.fiber_normal(p)
        w = sum(scale * X[i] * (_d(lambda q: self.fiber(np.concatenate([q, p[2:]])), x, i, H_BASE))
                for i in range(2)) + np.einsum("ijk,j,k->i", G, scale * X, X)
        # vertical part must vanish: w + n dphi = 0, and g(n, n) = -1
        dphi = w @ self.g(x) @ n
        return np.array([scale * X[0], scale * X[1], dphi])

    def angle(self, x, X):
        """phi with X = cosh(phi) e1 + sinh(phi) e2."""
        e1, e2 = self.frame(x)
        g = self.g(x)
        return np.arcsinh(-(X @ g @ e2))

    def normal_reeb(self, path, t, h=1.0 / 128):
        """(kappa~, g1(N~, xi)) for the coordinate path t -> (u, v, phi) at t."""
        def vel(s):
            return (8 * (path(s + h) - path(s - h)) - (path(s + 2 * h) - path(s - 2 * h))) / (12 * h)

        def unit_T(s):
            c = vel(s)
            return c / np.sqrt(abs(c @ self.metric(path(s)) @ c))

        p = path(t)
        c = vel(t)
        M = self.metric(p)
        lam = np.sqrt(abs(c @ M @ c))
        dT = (8 * (unit_T(t + h) - unit_T(t - h)) - (unit_T(t + 2 * h) - unit_T(t - 2 * h))) / (12 * h)
        acc = (dT + np.einsum("abc,b,c->a", self.christoffel(p), c, unit_T(t))) / lam
        kappa = np.sqrt(abs(acc @ M @ acc))
        N = acc / kappa
        return kappa, N @ M @ self.xi(p)
