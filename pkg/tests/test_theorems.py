import numpy as np
import pytest
from hypothesis import given, strategies as st

import families
from nslant import theorems
from nslant.errors import SingularSigma
from nslant.lorentz import AngleLaw
from nslant.theorems import Profile, TheoremSetup, verify_theorem


def test_sigma_bar_values():
    assert theorems.sigma_bar(1.0) == 0.0
    assert abs(theorems.sigma_bar(0.0) - 64 / 15) < 1e-12
    assert abs(theorems.sigma_bar(-1.0) - 128 / 31) < 1e-12
    with pytest.raises(SingularSigma):
        theorems.sigma_bar(15 / 16)
    assert np.allclose(theorems.sigma_bar(np.array([0.0, 1.0])), [64 / 15, 0.0])


def test_linear_angle_predicate_exact():
    chk = theorems.check_thm8(0.0, 64.0, 15.0, 1e-12)
    assert chk.holds and chk.residual == 0.0
    assert chk.witnesses["branch"] == "-"


@given(st.floats(0.1, 10.0))
def test_linear_angle_zero_locus_flat(a):
    r = theorems.thm8_residual(0.0, a, 15 * a / 64, -1.0)
    assert abs(r) < 1e-12 * max(1.0, a)


def test_scalar_predicate_needs_a_kappa_sigma():
    with pytest.raises(ValueError):
        verify_theorem("thm8", TheoremSetup(a=1.0))


def test_kappa_audit_flags_inconsistency():
    chk = theorems.audit_example11(1.0)
    assert not chk.holds
    assert chk.witnesses["residual_sigma0"] < 1e-12
    assert chk.witnesses["residual_sigma_minus1"] == pytest.approx(1 / 16, abs=1e-15)
    assert chk.witnesses["residual_with_needed"] < 1e-12
    assert chk.witnesses["consistent_sigma"] == 0.0
    assert any(f.startswith("example11-inconsistent") for f in chk.flags)


@pytest.mark.parametrize("name", ["thm8", "thm9", "thm8-9", "thm8_9", "THM8"])
def test_aliases(name):
    chk = verify_theorem(name, TheoremSetup(a=64.0, kappa=15.0, sigma=0.0, tol=1e-12))
    assert chk.name == "thm8" and chk.holds


def test_unknown_theorem():
    with pytest.raises(ValueError, match="unknown theorem"):
        verify_theorem("thm99", TheoremSetup())


def test_normal_legendre_check_on_slant_lift():
    L = families.desitter_slant(2.0)
    chk = verify_theorem("prop3", TheoremSetup(lifted=L, t=L.grid(64), tol=1e-5))
    assert chk.holds and chk.residual < 1e-5
    assert chk.notes == []
    assert chk.oracle["present"] and chk.oracle["agreement"]


def test_check_record_is_plain():
    rec = theorems.audit_example11(2.0).to_record()
    assert set(rec) == {"name", "holds", "residual", "tol", "witnesses", "notes", "oracle", "flags"}


# synthetic profiles: the predicates are pure functions of the sampled data

def _profile(s, theta, law, kappa, sigma, kappa_t, orientation=1.0):
    L = orientation * law.evaluate(theta)
    dtheta = np.gradient(theta, s, edge_order=2)
    return Profile(s=s, L=L, dL=dtheta * orientation * law.derivative(theta), theta=theta, dtheta=dtheta,
                   law=law, orientation=orientation, kappa=np.broadcast_to(kappa, s.shape).astype(float),
                   sigma=np.full_like(s, sigma), kappa_t=kappa_t, normal=np.zeros_like(s),
                   verdicts=["none", "n_slant"], constants={})


S = np.linspace(0.0, 1.0, 401)


def test_integrated_curvature_fit_cosh():
    kt = 1.0 + 0.5 * S
    K = S + 0.25 * S ** 2
    theta = np.arccosh(0.7 * K + 1.2)
    chk = theorems.check_thm4(_profile(S, theta, AngleLaw.COSH_SPAN, 1.0, 0.0, kt), 1e-6)
    assert chk.holds
    assert abs(chk.witnesses["c"] - 0.7) < 1e-8 and abs(chk.witnesses["d"] - 1.2) < 1e-8


def test_integrated_curvature_fit_rejects_unrelated_angle():
    kt = 1.0 + 0.5 * S
    theta = np.arccosh(1.2 + np.sin(3 * S))
    assert not theorems.check_thm4(_profile(S, theta, AngleLaw.COSH_SPAN, 1.0, 0.0, kt), 1e-6).holds


def test_angle_rate_matches_kappa_sigma_bar():
    kappa = 0.3
    theta = 0.1 + kappa * (64 / 15) * S
    chk = theorems.check_thm6_legendre(_profile(S, theta, AngleLaw.COS_SPAN, kappa, 0.0, np.ones_like(S)), 1e-8)
    assert chk.holds and chk.witnesses["branch"] == "+"
    theta = 0.1 - kappa * (64 / 15) * S
    chk = theorems.check_thm6_legendre(_profile(S, theta, AngleLaw.COS_SPAN, kappa, 0.0, np.ones_like(S)), 1e-8)
    assert chk.holds and chk.witnesses["branch"] == "-"


def test_angle_rate_singular_sigma():
    p = _profile(S, 0 * S, AngleLaw.COS_SPAN, 1.0, 15 / 16, np.ones_like(S))
    with pytest.raises(SingularSigma):
        theorems.check_thm6_legendre(p, 1e-6)


def test_slant_ode_fit():
    # sigma = 1: L' = c kappa~ with L = cos(theta)
    kt = 2.0 + np.sin(S)
    L = 0.9 - 0.2 * (2 * S + 1 - np.cos(S))
    theta = np.arccos(L)
    p = _profile(S, theta, AngleLaw.COS_SPAN, 0.5, 1.0, kt)
    p.dL = -0.2 * kt
    chk = theorems.check_thm6_slant(p, 1e-10)
    assert chk.holds and abs(chk.witnesses["c"] + 0.2) < 1e-12


def test_inverse_law_sigma_one_reduces_to_arcsin():
    a, c = 1.5, 0.4
    kt = 1.0 + S ** 2
    theta = np.arcsin(c * kt / a)
    chk = theorems.check_thm12(_profile(S, theta, AngleLaw.COS_SPAN, 0.7, 1.0, kt), a, 1e-10)
    assert chk.name == "thm12" and chk.holds and abs(chk.witnesses["c"] - c) < 1e-12


def test_inverse_law_sinh_variant():
    a, c, kappa, sigma = 1.0, 0.3, 0.2, 0.0
    kt = 1.0 + S
    D = theorems.thm12_denominator(AngleLaw.COSH_SPAN, sigma, a, kappa, -1.0)
    theta = np.arcsinh(c * kt / D)
    chk = theorems.check_thm12(_profile(S, theta, AngleLaw.COSH_SPAN, kappa, sigma, kt), a, 1e-10)
    assert chk.name == "thm13" and chk.holds and chk.witnesses["branch"] == "-"


def test_curvature_ratio_needs_nonzero_constant():
    p = _profile(S, 0 * S + 0.2, AngleLaw.COS_SPAN, 0.5, 0.0, 2 * np.ones_like(S))
    p.verdicts = ["slant", "n_slant"]
    chk = theorems.check_prop5(p, 1e-8)
    assert chk.holds and abs(chk.witnesses["ratio_mean"] - 0.25) < 1e-12
    p.sigma[:] = 1.0
    chk = theorems.check_prop5(p, 1e-8)
    assert not chk.holds and chk.residual == 0.0
    assert any("nonzero constant" in n for n in chk.notes)


def test_fit_linear_angle():
    p = _profile(S, 0.3 + 1.7 * S, AngleLaw.COS_SPAN, 1.0, 0.0, np.ones_like(S))
    a, b, dev = theorems.fit_linear_angle(p)
    assert abs(a - 1.7) < 1e-12 and abs(b - 0.3) < 1e-12 and dev < 1e-12
