"""Reeb-angle diagnostics of lifted curves: g1(T~, xi), g1(N~, xi) and verdicts.

All s-derivatives refer to the g1-arclength of the lift and are obtained from
parameter derivatives by the chain rule d/ds = (1/lambda) d/dt, where lambda is
the g1-speed. The lift therefore never has to be reparametrized.

Two routes to g1(N~, xi):

* the oracle takes N~ from the Frenet frame of the lift in T1M (normative);
* the closed form rebuilds it from base-curve data (r, L, beta, kappa, sigma).

  ``verbatim``:     16 r (1 - sigma)/kappa~ ((L/r)' + sign_beta eps2 r kappa sqrt(Q)) - theta' L'(theta)/kappa~
  ``theta-prime``:  the same with (L/r)' replaced by theta' L'(theta)
  ``corrected``:    [theta' L'(theta) - r (1 - sigma eps_X) ((L/r)' - r kappa beta)] / kappa~

  with Q = eps_X eps2 (r/2)^2 - eps1 eps2 L^2 and beta = eps2 g(X, N) / 2.
  The third line is what the Sasaki connection gives; the first two are kept
  for comparison.
"""

from dataclasses import dataclass, field

import numpy as np

from . import bundle, numdiff
from .errors import (GeodesicLift, GeometryError, ImaginaryBeta, LawMismatch, NullDerivative,
                     OutOfRange)
from .frenet import FRAME_TOL, frenet2_at, frenet3_at
from .lorentz import AngleLaw, select_law
from .surface import apply_riemann

CLOSED_VARIANTS = ("verbatim", "theta-prime", "corrected")
DEVIATION_RTOL = 1e-3


@dataclass
class AngleSample:
    law: AngleLaw
    L: np.ndarray
    theta: np.ndarray
    s: np.ndarray
    orientation: float = 1.0


@dataclass
class FiberDecomposition:
    coefT: np.ndarray
    beta: np.ndarray
    sign_beta: np.ndarray
    beta_formula: np.ndarray
    constraint: np.ndarray
    branch_flips: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# scalar fields along the lift (vectorized in t)


def lift_speed(lifted, t):
    v = lifted.velocity(t)
    q = lifted.inner(t, v, v)
    return np.sqrt(np.abs(q)), np.sign(q)


def reeb_cosine(lifted, t):
    """L = g1(T~, xi) with T~ the g1-unit tangent."""
    v = lifted.velocity(t)
    lam, _ = lift_speed(lifted, t)
    return lifted.inner(t, v, lifted.xi(t)) / lam


def xi_factor(lifted):
    """g1(., xi) relative to the xi = 2 u^h normalization (1, or 1/4 for paper-half)."""
    return bundle.xi_scale(lifted.xi_convention) / 2.0


def d_ds(lifted, f, t):
    """d f / ds along the lift for a scalar function f of the parameter."""
    return numdiff.deriv(f, t, lifted.h) / lift_speed(lifted, t)[0]


def base_speed(lifted, t):
    """r = |d gamma / ds|, the base speed in the lift's arclength."""
    E = lifted.E(t)
    q = lifted.chart.inner(lifted.gamma(t), E, E)
    return np.sqrt(np.abs(q)) / lift_speed(lifted, t)[0]


def _law_for(lifted, t, L, law=None):
    if law is not None:
        return law if isinstance(law, AngleLaw) else AngleLaw.parse(law)
    _, eps_lift = lift_speed(lifted, t)
    e_lift = float(eps_lift.flat[0])
    if np.any(eps_lift != e_lift):
        raise GeometryError("lift changes causal character")
    # one law for the whole curve, chosen by the largest |L|
    return select_law(e_lift, lifted.eps_X, float(np.max(np.abs(L))))


def _orientation(law, L):
    """-1 for pairs of timelike vectors in the same time cone (L <= -1), else 1."""
    if law is AngleLaw.COSH_SPAN and np.all(np.asarray(L) < 0):
        return -1.0
    return 1.0


def _invert(law, L, orientation, tol):
    Lc = orientation * np.asarray(L, dtype=float)
    if law is AngleLaw.COS_SPAN:
        Lc = np.where(np.abs(Lc) - 1.0 < tol, np.clip(Lc, -1.0, 1.0), Lc)
    elif law is AngleLaw.COSH_SPAN:
        Lc = np.where(Lc - 1.0 > -tol, np.maximum(Lc, 1.0), Lc)
    return law.inverse(Lc)


def tangent_reeb(lifted, t, law=None, tol=1e-9):
    """Angle sample of g1(T~, xi) = L(theta) at parameters ``t``.

    The law follows the causal characters of T~ and xi unless overridden. Two
    timelike vectors in the same time cone give L = -cosh(theta); this is
    reported as ``orientation = -1``. Raises ``LawMismatch`` when L is outside
    the range of the law.
    """
    t = np.asarray(t, dtype=float)
    L = reeb_cosine(lifted, t)
    chosen = _law_for(lifted, t, L, law)
    orient = _orientation(chosen, L)
    try:
        theta = _invert(chosen, L, orient, tol)
    except OutOfRange as exc:
        raise LawMismatch(f"g1(T~, xi) outside the {chosen.value} law: {exc}") from None
    return AngleSample(law=chosen, L=L, theta=theta, s=t, orientation=orient)


def theta_of(lifted, law, orientation=1.0):
    """theta(t) as a function, for differentiation."""
    return lambda t: _invert(law, reeb_cosine(lifted, t), orientation, np.inf)


# ---------------------------------------------------------------------------
# base-curve decomposition


def _base_frame(lifted, t, tol):
    return frenet2_at(lifted.chart, lifted.gamma, t, tol=tol)


def fiber_beta(lifted, t, tol=FRAME_TOL):
    """beta = eps2 g(X, N) / 2 from the base Frenet frame."""
    fr = _base_frame(lifted, t, tol)
    x = lifted.gamma(t)
    return 0.5 * fr.eps2 * lifted.chart.inner(x, lifted.X(t), fr.N)


def decompose_fiber(lifted, t, tol=FRAME_TOL, beta_tol=1e-9):
    """X = coefT T + 2 beta N with coefT = 2 eps1 L / r.

    ``beta`` is measured from X. ``beta_formula`` is the root of the quadratic
    constraint with the sign continued from the first sample; the sign changes
    only where the measured beta passes through zero, and those parameters are
    listed in ``branch_flips``. ``sign_beta`` holds the per-sample sign.
    """
    t = np.asarray(t, dtype=float)
    fr = _base_frame(lifted, t, tol)
    x = lifted.gamma(t)
    X = lifted.X(t)
    L = reeb_cosine(lifted, t) / xi_factor(lifted)
    r = base_speed(lifted, t)
    eps1, eps2, epsX = fr.eps1, fr.eps2, lifted.eps_X
    coefT = 2.0 * eps1 * L / r
    beta = 0.5 * eps2 * lifted.chart.inner(x, X, fr.N)
    radicand = epsX * eps2 * (r / 2.0) ** 2 - eps1 * eps2 * L ** 2
    if np.any(radicand < -beta_tol):
        raise ImaginaryBeta(f"negative radicand {radicand.min():.3g}")
    signs = np.empty(np.shape(beta))
    flips = []
    cur = 1.0 if np.ravel(beta)[0] >= 0 else -1.0
    for i, (s, b) in enumerate(zip(np.ravel(t), np.ravel(beta))):
        if abs(b) > beta_tol and np.sign(b) != cur:
            cur = float(np.sign(b))
            flips.append(float(s))
        signs.flat[i] = cur
    beta_formula = signs * np.sqrt(np.maximum(radicand, 0.0)) / r
    constraint = 4.0 * eps1 * L ** 2 / r ** 2 + 4.0 * eps2 * beta ** 2 - epsX
    return FiberDecomposition(coefT=coefT, beta=beta, sign_beta=signs, beta_formula=beta_formula,
                              constraint=constraint, branch_flips=flips)


# ---------------------------------------------------------------------------
# g1(N~, xi)


def normal_reeb_oracle(lifted, t, tol=FRAME_TOL):
    """g1(N~, xi) with N~ from the Frenet frame of the lift in T1M."""
    fr = frenet3_at(lifted, t, tol=tol)
    return lifted.inner(np.asarray(t, dtype=float), fr.N, lifted.xi(t))


def reeb_derivative_term(lifted, t):
    """g1(T~, nabla1_{T~} xi), computed with the Sasaki connection."""
    t = np.asarray(t, dtype=float)
    lam, _ = lift_speed(lifted, t)
    T = lifted.velocity(t) / lam[..., None]
    dxi = lifted.nabla(lifted.xi, t) / lam[..., None]
    return lifted.inner(t, T, dxi)


@dataclass
class BaseData:
    """Base-curve quantities at the samples, in the lift's arclength."""
    r: np.ndarray
    L: np.ndarray
    theta: np.ndarray
    law: AngleLaw
    dtheta: np.ndarray
    dLaw: np.ndarray
    dL_over_r: np.ndarray
    kappa: np.ndarray
    eps1: np.ndarray
    eps2: np.ndarray
    beta: np.ndarray
    sign_beta: np.ndarray
    sigma: np.ndarray
    W_norm: np.ndarray
    internals: dict
    xi_factor: float = 1.0


def base_data(lifted, t, law=None, tol=FRAME_TOL):
    t = np.asarray(t, dtype=float)
    ang = tangent_reeb(lifted, t, law=law)
    dec = decompose_fiber(lifted, t, tol=tol)
    fr = _base_frame(lifted, t, tol)
    x = lifted.gamma(t)
    chart = lifted.chart
    lam, _ = lift_speed(lifted, t)
    r = base_speed(lifted, t)
    dtheta = d_ds(lifted, theta_of(lifted, ang.law, ang.orientation), t)
    dL_over_r = d_ds(lifted, lambda s: reeb_cosine(lifted, s) / base_speed(lifted, s), t)
    sigma = chart.sigma_at(x)
    # s-parametrized E and nabla_E X
    E = lifted.E(t) / lam[..., None]
    W = lifted.W(t) / lam[..., None]
    raw = lifted.raw_W(t) / lam[..., None]
    X = lifted.X(t)
    qW = chart.inner(x, W, W)
    W_norm = np.sqrt(np.abs(qW))
    internals = {"orthogonality": np.abs(chart.inner(x, X, raw))}
    # E in the basis (X, W): exact whenever W is non-null
    safe = np.where(np.abs(qW) > 1e-14, qW, np.nan)
    E_rec = (lifted.eps_X * chart.inner(x, E, X))[..., None] * X + (chart.inner(x, E, W) / safe)[..., None] * W
    internals["reconstruction"] = np.linalg.norm(E_rec - E, axis=-1)
    R = chart.riemann_at(x)
    internals["curvature_term"] = chart.inner(x, apply_riemann(R, E, X, X), W)
    internals["curvature_term_printed"] = 2.0 * r * (dL_over_r / xi_factor(lifted) + fr.eps2 * r * dec.beta_formula * fr.kappa) * sigma
    return BaseData(r=r, L=ang.L, theta=ang.theta, law=ang.law, dtheta=dtheta,
                    dLaw=ang.orientation * ang.law.derivative(ang.theta), dL_over_r=dL_over_r, kappa=fr.kappa,
                    eps1=fr.eps1, eps2=fr.eps2, beta=dec.beta, sign_beta=dec.sign_beta,
                    sigma=sigma, W_norm=W_norm, internals=internals, xi_factor=xi_factor(lifted))


def closed_from_data(d, kappa_t, eps_X, variant="verbatim", tol=FRAME_TOL):
    """Closed-form g1(N~, xi) from ``BaseData`` and the lift curvature."""
    if variant not in CLOSED_VARIANTS:
        raise ValueError(f"unknown closed-form variant {variant!r}")
    tail = d.dtheta * d.dLaw
    k = d.xi_factor  # L terms carry it already, beta terms do not
    if variant == "corrected":
        return (tail - d.r * (1.0 - d.sigma * eps_X) * (d.dL_over_r - k * d.r * d.kappa * d.beta)) / kappa_t
    if np.any(d.W_norm < tol):
        raise NullDerivative(f"|nabla_E X| = {d.W_norm.min():.3g} vanishes")
    radicand = eps_X * d.eps2 * (d.r / 2.0) ** 2 - d.eps1 * d.eps2 * (d.L / k) ** 2
    root = k * d.sign_beta * d.eps2 * d.r * d.kappa * np.sqrt(np.maximum(radicand, 0.0))
    first = d.dL_over_r if variant == "verbatim" else tail
    return 16.0 * d.r * (1.0 - d.sigma) / kappa_t * (first + root) - tail / kappa_t


def normal_reeb_closed(lifted, t, variant="verbatim", law=None, tol=FRAME_TOL):
    """Closed-form g1(N~, xi) at parameters ``t`` (see module docstring)."""
    t = np.asarray(t, dtype=float)
    d = base_data(lifted, t, law=law, tol=tol)
    kappa_t = frenet3_at(lifted, t, tol=tol).kappa
    return closed_from_data(d, kappa_t, lifted.eps_X, variant=variant, tol=tol)


# ---------------------------------------------------------------------------
# classification


@dataclass
class SlantReport:
    t: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    closed: dict
    law: str
    theta: np.ndarray
    kappa_t: np.ndarray
    verdicts: list
    constants: dict
    xi_convention: str
    discrepancy: dict
    deviations: list
    errors: list
    tol: float

    def to_record(self):
        return {
            "verdicts": list(self.verdicts),
            "constants": dict(self.constants),
            "law": self.law,
            "xi_convention": self.xi_convention,
            "tol": self.tol,
            "discrepancy": dict(self.discrepancy),
            "deviations": list(self.deviations),
            "errors": list(self.errors),
            "samples": {
                "t": self.t, "g1_T_xi": self.tangent, "g1_N_xi_oracle": self.normal,
                **{f"g1_N_xi_{k}": v for k, v in self.closed.items()},
                "theta": self.theta, "kappa_tilde": self.kappa_t,
            },
        }


def constancy(values, tol):
    """(mean, max deviation); the deviation is NaN-aware."""
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return float("nan"), float("inf")
    c = float(np.mean(v))
    return c, float(np.max(np.abs(v - c)))


def verdicts_from_samples(tangent, normal, tol):
    """Verdict list and fitted constants from sampled g1(T~, xi) and g1(N~, xi).

    ``normal`` may be None (no N~ verdict, e.g. geodesic lifts).
    """
    verdicts, consts = [], {}
    c, dev = constancy(tangent, tol)
    if np.max(np.abs(tangent)) < tol:
        verdicts.append("legendre")
    elif dev < tol and abs(c) >= tol:
        verdicts.append("slant")
        consts["slant"] = {"c": c, "residual": dev}
    if normal is not None:
        cn, devn = constancy(normal, tol)
        if np.max(np.abs(normal)) < tol:
            verdicts.append("n_legendre")
        elif devn < tol and abs(cn) >= tol:
            verdicts.append("n_slant")
            consts["n_slant"] = {"c": cn, "residual": devn}
    if not verdicts:
        verdicts.append("none")
    return verdicts, consts


def classify(lifted, t, tol=1e-6, law=None, variants=CLOSED_VARIANTS, frame_tol=FRAME_TOL):
    """Classify a lift from samples at parameters ``t`` (at least 16)."""
    t = np.asarray(t, dtype=float)
    if t.size < 16:
        raise ValueError("classification needs at least 16 samples")
    errors = []
    tangent = reeb_cosine(lifted, t)
    fr = frenet3_at(lifted, t, tol=frame_tol, strict=False)
    geo = fr.geodesic
    kappa_t = fr.kappa
    normal = None
    if np.any(geo):
        errors.append({"error": GeodesicLift.code, "samples": int(np.sum(geo)),
                       "first_t": float(t[geo][0]),
                       "message": "lift curvature vanishes; N~ undefined"})
    else:
        normal = lifted.inner(t, fr.N, lifted.xi(t))
    theta = np.full_like(t, np.nan)
    law_name = "none"
    closed, unavailable = {}, []
    try:
        d = base_data(lifted, t, law=law, tol=frame_tol)
        theta, law_name = d.theta, d.law.value
        if normal is not None:
            for v in variants:
                try:
                    closed[v] = closed_from_data(d, kappa_t, lifted.eps_X, variant=v, tol=frame_tol)
                except GeometryError as exc:
                    unavailable.append({"kind": "closed-form-unavailable", "variant": v, **exc.to_record()})
    except (GeometryError, LawMismatch) as exc:
        errors.append(exc.to_record())
    verdicts, consts = verdicts_from_samples(tangent, normal, tol)
    discrepancy, deviations = {}, list(unavailable)
    if normal is not None:
        scale = np.maximum(np.abs(normal), 1.0)
        for v, vals in closed.items():
            diff = np.abs(vals - normal)
            discrepancy[v] = float(np.max(diff))
            bad = diff > np.maximum(tol, DEVIATION_RTOL * scale)
            if v != "corrected" and np.any(bad):
                deviations.append({
                    "kind": "formula-deviation", "variant": v,
                    "samples": int(np.sum(bad)), "max_abs": float(np.max(diff)),
                    "max_rel": float(np.max(diff / scale)),
                })
    return SlantReport(t=t, tangent=tangent, normal=normal if normal is not None else np.full_like(t, np.nan),
                       closed=closed, law=law_name, theta=theta, kappa_t=kappa_t, verdicts=verdicts,
                       constants=consts, xi_convention=lifted.xi_convention,
                       discrepancy=discrepancy, deviations=deviations, errors=errors, tol=tol)
