"""Named predicates on sampled lifts, each reported next to the oracle verdict.

Every check returns a ``TheoremCheck`` whose ``holds`` flag is exactly
``residual < tol``. The oracle classification of the same lift is attached so
that a predicate and the Frenet-frame computation can be compared directly.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import SingularSigma
from .frenet import FRAME_TOL, frenet3_at
from .lorentz import AngleLaw
from . import slant

SIGMA_TOL = 1e-12


def sigma_bar(sigma, tol=SIGMA_TOL):
    """64 (1 - sigma) / (15 - 16 sigma)."""
    sigma = np.asarray(sigma, dtype=float)
    den = 15.0 - 16.0 * sigma
    if np.any(np.abs(den) <= tol):
        raise SingularSigma(f"sigma = {sigma} makes 15 - 16 sigma vanish")
    out = 64.0 * (1.0 - sigma) / den + 0.0  # no negative zero
    return float(out) if out.ndim == 0 else out


@dataclass
class TheoremCheck:
    name: str
    holds: bool
    residual: float
    tol: float
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    oracle: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def to_record(self):
        return {
            "name": self.name, "holds": bool(self.holds), "residual": float(self.residual),
            "tol": float(self.tol), "witnesses": dict(self.witnesses), "notes": list(self.notes),
            "oracle": dict(self.oracle), "flags": list(self.flags),
        }


@dataclass
class TheoremSetup:
    """Inputs of a check: a lift sampled at ``t``, or bare scalars for the
    arithmetic predicates (``a``, ``kappa``, ``sigma``)."""
    lifted: object = None
    t: np.ndarray = None
    tol: float = 1e-6
    law: object = None
    a: float = None
    kappa: float = None
    sigma: float = None


@dataclass
class Profile:
    """Sampled lift data used by all predicates (derivatives in arclength s)."""
    s: np.ndarray
    L: np.ndarray
    dL: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    law: AngleLaw
    orientation: float
    kappa: np.ndarray
    sigma: np.ndarray
    kappa_t: np.ndarray
    normal: np.ndarray
    verdicts: list
    constants: dict


def profile(lifted, t, law=None, tol=1e-6):
    t = np.asarray(t, dtype=float)
    d = slant.base_data(lifted, t, law=law)
    fr = frenet3_at(lifted, t, tol=FRAME_TOL)
    normal = lifted.inner(t, fr.N, lifted.xi(t))
    lam, _ = slant.lift_speed(lifted, t)
    s = cumulative_simpson(lam, x=t, initial=0.0)
    verdicts, consts = slant.verdicts_from_samples(d.L, normal, tol)
    orient = -1.0 if (d.law is AngleLaw.COSH_SPAN and np.all(d.L < 0)) else 1.0
    return Profile(s=s, L=d.L, dL=d.dtheta * d.dLaw, theta=d.theta, dtheta=d.dtheta, law=d.law,
                   orientation=orient, kappa=d.kappa, sigma=d.sigma, kappa_t=fr.kappa, normal=normal,
                   verdicts=verdicts, constants=consts)


def _oracle(p, expect):
    got = expect in p.verdicts
    return {"verdicts": p.verdicts, "constants": p.constants, "expected": expect, "present": got}


def _best(residuals):
    """Pick the branch with the smallest max residual: returns (branch, residual, all)."""
    maxes = {k: float(np.max(np.abs(v))) for k, v in residuals.items()}
    k = min(maxes, key=maxes.get)
    return k, maxes[k], maxes


def _agree(check):
    check.oracle["agreement"] = bool(check.holds) == bool(check.oracle.get("present"))
    return check


# ---------------------------------------------------------------------------
# predicates on lifts


def check_prop3(p, tol):
    res = float(np.max(np.abs(p.normal)))
    notes = []
    if not ({"legendre", "slant"} & set(p.verdicts)):
        notes.append("premise not met: lift is neither legendre nor slant")
    if np.max(np.abs(p.sigma - 1.0)) > 1e-6:
        notes.append("premise not met: base sectional curvature is not 1")
    c = TheoremCheck("prop3", res < tol, res, tol, witnesses={"g1_N_xi": p.normal}, notes=notes,
                     oracle=_oracle(p, "n_legendre"))
    return _agree(c)


def check_thm4(p, tol):
    """L(theta) = c K(s) + d with K = int kappa~ ds; theta matched through the law."""
    K = cumulative_simpson(p.kappa_t, x=p.s, initial=0.0)
    A = np.column_stack([K, np.ones_like(K)])
    (c, d), *_ = np.linalg.lstsq(A, p.L, rcond=None)
    pred = slant._invert(p.law, c * K + d, p.orientation, np.inf)
    res = float(np.max(np.abs(pred - p.theta)))
    notes = ["integration constant d fitted with c"]
    if abs(c) < tol:
        notes.append("fitted c vanishes")
    chk = TheoremCheck("thm4", res < tol and abs(c) >= tol, res, tol,
                       witnesses={"c": float(c), "d": float(d), "law": p.law.value, "theta_pred": pred},
                       notes=notes, oracle=_oracle(p, "n_slant"))
    return _agree(chk)


def check_prop5(p, tol):
    ratio = (1.0 - p.sigma) * p.kappa / p.kappa_t
    c, dev = slant.constancy(ratio, tol)
    notes = []
    if "slant" not in p.verdicts:
        notes.append("premise not met: lift is not slant")
    if np.max(np.abs(p.sigma - 1.0)) < 1e-6:
        notes.append("premise not met: base has sigma = 1")
    if abs(c) < tol:
        notes.append("ratio vanishes; a nonzero constant is required")
    chk = TheoremCheck("prop5", dev < tol and abs(c) >= tol, dev, tol,
                       witnesses={"ratio_mean": c, "ratio": ratio}, notes=notes,
                       oracle=_oracle(p, "n_slant"))
    return _agree(chk)


def check_thm6_legendre(p, tol):
    sb = sigma_bar(p.sigma)
    branch, res, both = _best({"+": p.dtheta - p.kappa * sb, "-": p.dtheta + p.kappa * sb})
    chk = TheoremCheck("thm6-legendre", res < tol, res, tol,
                       witnesses={"branch": branch, "branches": both, "sigma_bar": sb},
                       oracle=_oracle(p, "n_legendre"))
    return _agree(chk)


def check_thm6_slant(p, tol):
    sb = sigma_bar(p.sigma)
    fits = {}
    for name, sgn in (("+", 1.0), ("-", -1.0)):
        q = p.dL + sgn * p.kappa * sb * p.L
        c = float(np.mean(q / p.kappa_t))
        fits[name] = (c, q - c * p.kappa_t)
    branch, res, both = _best({k: v[1] for k, v in fits.items()})
    c = fits[branch][0]
    chk = TheoremCheck("thm6-slant", res < tol and abs(c) >= tol, res, tol,
                       witnesses={"branch": branch, "branches": both, "c": c},
                       oracle=_oracle(p, "n_slant"))
    return _agree(chk)


def thm8_residual(sigma, a, kappa, sign):
    """(1 - sigma)(a + sign 4 kappa) - a / 16."""
    return (1.0 - np.asarray(sigma, dtype=float)) * (a + sign * 4.0 * np.asarray(kappa, dtype=float)) - a / 16.0


def check_thm8(sigma, a, kappa, tol, p=None, notes=()):
    branch, res, both = _best({"+": thm8_residual(sigma, a, kappa, 1.0),
                               "-": thm8_residual(sigma, a, kappa, -1.0)})
    chk = TheoremCheck("thm8", res < tol, res, tol, notes=list(notes),
                       witnesses={"branch": branch, "branches": both, "a": float(a)})
    if p is not None:
        chk.oracle = _oracle(p, "n_legendre")
        _agree(chk)
    return chk


def thm12_denominator(law, sigma, a, kappa, sign):
    base = 16.0 * (np.asarray(sigma, dtype=float) - 1.0) * (a + sign * 4.0 * np.asarray(kappa, dtype=float))
    return a + base if law is AngleLaw.COS_SPAN else a - base


_FORWARD = {AngleLaw.COS_SPAN: (np.sin, np.arcsin),
            AngleLaw.COSH_SPAN: (np.sinh, np.arcsinh),
            AngleLaw.SINH_MIXED: (np.cosh, np.arccosh)}


def check_thm12(p, a, tol):
    """theta = F^-1(c kappa~ / D) with F = sin, sinh or cosh by law."""
    fwd, inv = _FORWARD[p.law]
    fits = {}
    for name, sgn in (("+", 1.0), ("-", -1.0)):
        D = thm12_denominator(p.law, p.sigma, a, p.kappa, sgn)
        q = fwd(p.theta) * D / p.kappa_t
        c = float(np.mean(q))
        fits[name] = (c, fwd(p.theta) - c * p.kappa_t / D, D)
    branch, res, both = _best({k: v[1] for k, v in fits.items()})
    c, _, D = fits[branch]
    arg = c * p.kappa_t / D
    with np.errstate(invalid="ignore"):
        pred = inv(arg)
    name = "thm12" if p.law is AngleLaw.COS_SPAN else "thm13"
    chk = TheoremCheck(name, res < tol and abs(c) >= tol, res, tol,
                       witnesses={"branch": branch, "branches": both, "c": c, "a": float(a),
                                  "law": p.law.value, "theta_pred": pred},
                       notes=["residual measured as |F(theta) - c kappa~ / D|"],
                       oracle=_oracle(p, "n_slant"))
    return _agree(chk)


def fit_linear_angle(p):
    """Slope a and intercept b of theta(s), with the max deviation from the line."""
    A = np.column_stack([p.s, np.ones_like(p.s)])
    (a, b), *_ = np.linalg.lstsq(A, p.theta, rcond=None)
    return float(a), float(b), float(np.max(np.abs(p.theta - (a * p.s + b))))


# ---------------------------------------------------------------------------
# kappa = 15 a / 64 audit


def audit_example11(a, tol=1e-9):
    """Evaluate (1 - sigma)(a +- 4 kappa) = a / 16 at kappa = 15 a / 64 for sigma = 0 and -1.

    The stated curvature zeroes the predicate only at sigma = 0; at sigma = -1
    the zero locus is kappa = -+31 a / 128. The inconsistency is flagged.
    """
    kappa = 15.0 * a / 64.0
    flat = check_thm8(0.0, a, kappa, tol)
    ads = check_thm8(-1.0, a, kappa, tol)
    needed = 31.0 * a / 128.0
    ads_fix = check_thm8(-1.0, a, needed, tol)
    flags = []
    if flat.holds and not ads.holds:
        flags.append("example11-inconsistent: kappa = 15a/64 solves the predicate at sigma = 0, not sigma = -1")
    return TheoremCheck(
        "example11", ads.holds, ads.residual, tol,
        witnesses={
            "a": float(a), "kappa": kappa,
            "residual_sigma0": flat.residual, "branch_sigma0": flat.witnesses["branch"],
            "residual_sigma_minus1": ads.residual,
            "kappa_needed_sigma_minus1": needed, "residual_with_needed": ads_fix.residual,
            "branch_with_needed": ads_fix.witnesses["branch"],
            "consistent_sigma": 0.0 if flat.holds else None,
        },
        notes=["holds reports the claim for sigma = -1"],
        flags=flags,
    )


# ---------------------------------------------------------------------------

THEOREMS = ("prop3", "thm4", "prop5", "thm6-legendre", "thm6-slant", "thm8", "thm12", "example11")


def verify_theorem(name, setup):
    """Run one named check; ``setup`` is a ``TheoremSetup``."""
    key = name.strip().lower().replace("_", "-")
    aliases = {"thm8-9": "thm8", "thm9": "thm8", "thm12-13": "thm12", "thm13": "thm12",
               "thm6legendre": "thm6-legendre", "thm6slant": "thm6-slant"}
    key = aliases.get(key, key)
    if key not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}; choose from {', '.join(THEOREMS)}")
    tol = setup.tol
    if key == "example11":
        return audit_example11(1.0 if setup.a is None else setup.a, tol=min(tol, 1e-9))
    if key == "thm8" and setup.lifted is None:
        if None in (setup.a, setup.kappa, setup.sigma):
            raise ValueError("thm8 without a lift needs a, kappa and sigma")
        return check_thm8(setup.sigma, setup.a, setup.kappa, tol)
    if setup.lifted is None:
        raise ValueError(f"{key} needs a lifted curve")
    p = profile(setup.lifted, setup.t, law=setup.law, tol=tol)
    if setup.sigma is not None:
        p.sigma = np.full_like(p.sigma, float(setup.sigma))
    if setup.kappa is not None:
        p.kappa = np.full_like(p.kappa, float(setup.kappa))
    if key == "prop3":
        return check_prop3(p, tol)
    if key == "thm4":
        return check_thm4(p, tol)
    if key == "prop5":
        return check_prop5(p, tol)
    if key == "thm6-legendre":
        return check_thm6_legendre(p, tol)
    if key == "thm6-slant":
        return check_thm6_slant(p, tol)
    a, b, lin = (setup.a, None, 0.0) if setup.a is not None else fit_linear_angle(p)
    notes = [] if setup.a is not None else [f"slope fitted from theta(s); max deviation from linear {lin:.3g}"]
    if key == "thm8":
        return check_thm8(p.sigma, a, p.kappa, tol, p=p, notes=notes)
    chk = check_thm12(p, a, tol)
    chk.notes.extend(notes)
    return chk
