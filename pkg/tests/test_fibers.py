import numpy as np
import pytest

import families
from nslant import bundle, fibers, slant, surface
from nslant.errors import OutOfRange
from nslant.lorentz import AngleLaw

DS = surface.de_sitter(1.0)


@pytest.mark.parametrize("c", [1.5, 2.0, 4.0])
def test_constant_angle_fiber_gives_constant_cosine(c):
    L = families.desitter_slant(c)
    t = L.grid(41)
    assert np.max(np.abs(slant.reeb_cosine(L, t) - c)) < 1e-8
    assert np.max(np.abs(DS.inner(L.gamma(t), L.X(t), L.X(t)) - 1)) < 1e-12


def test_constant_angle_timelike_fiber_on_ads():
    ads = surface.anti_de_sitter()
    g = families.line(0.2, 0.0, 0.3, 1.0)
    L = bundle.lift_curve(ads, g, fibers.constant_angle_fiber(ads, g, -2.0, phi0=0.2, causal="timelike"))
    assert L.eps_X == -1
    assert np.max(np.abs(slant.reeb_cosine(L, L.grid(21)) + 2.0)) < 1e-9


def test_linear_angle_fiber():
    g = families.circle()
    X = fibers.linear_angle_fiber(DS, g, 0.8, 1.0, AngleLaw.COSH_SPAN, phi0=0.2)
    L = bundle.lift_curve(DS, g, X)
    t = L.grid(21)
    assert np.max(np.abs(slant.reeb_cosine(L, t) - np.cosh(0.8 * t + 1.0))) < 1e-9


def test_wrong_sign_is_rejected():
    with pytest.raises(OutOfRange):
        fibers.constant_angle_fiber(DS, families.circle(), -2.0, phi0=0.3)


def test_unreachable_angle_is_rejected():
    # a spacelike fiber over a spacelike base gives |L| >= 1 on this lift family
    with pytest.raises(OutOfRange):
        fibers.constant_angle_fiber(DS, families.circle(), 0.5, phi0=0.3)


def test_parallel_fiber_is_parallel():
    g = families.circle()
    L = bundle.lift_curve(DS, g, fibers.parallel_fiber(DS, g, phi0=0.3))
    assert np.max(np.abs(L.W(L.grid(21)))) < 1e-9


def test_frame_fibers_are_unit():
    g = families.timelike_curve()
    t = g.grid(11)
    for X, eps in [(fibers.tangent_fiber(DS, g), -1), (fibers.normal_fiber(DS, g), 1),
                   (fibers.frame_angle_fiber(DS, g, lambda s: 0 * s + 0.4, "spacelike"), 1),
                   (fibers.frame_angle_fiber(DS, g, np.sin, "timelike"), -1)]:
        assert np.max(np.abs(DS.inner(g(t), X(t), X(t)) - eps)) < 1e-12


def test_component_fiber():
    g = families.circle()
    X = fibers.component_fiber(DS, g, lambda t: np.stack([np.ones_like(t), 0.2 * t], -1))
    t = g.grid(5)
    assert np.allclose(DS.inner(g(t), X(t), X(t)), 1.0)
