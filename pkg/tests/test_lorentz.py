import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nslant.errors import DimensionMismatch, NullVector, OutOfRange
from nslant.frenet import MinkowskiCurve3, frenet3_at
from nslant.lorentz import (M2, M3, AngleLaw, CausalCharacter, MetricSignature, angle_law_value,
                            causal_character, lorentz_norm, minkowski_inner, recover_angle, select_law,
                            wedge3)

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(finite, finite, finite).map(np.array)


def test_inner_examples():
    assert minkowski_inner(M3, [1, 2, 3], [1, 2, 3]) == -4
    assert minkowski_inner(M2, [1, 1], [1, 1]) == 0
    assert minkowski_inner(M3, [1, 0, 0], [0, 0, 1]) == 0


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        minkowski_inner(M3, [1, 0], [1, 0, 0])


def test_signature_validation():
    assert MetricSignature((1, -1)) == (1, -1)
    with pytest.raises(ValueError):
        MetricSignature((1, 0, -1))
    with pytest.raises(ValueError):
        MetricSignature((1, 1, 1, -1))


@pytest.mark.parametrize("x, want", [
    ([1, 0, 0], CausalCharacter.SPACELIKE),
    ([0, 0, 1], CausalCharacter.TIMELIKE),
    ([1, 0, 1], CausalCharacter.NULL),
])
def test_causal_examples(x, want):
    assert causal_character(M3, x, tol=1e-12) is want


def test_wedge_examples():
    e1, e2, e3 = np.eye(3)
    assert np.array_equal(wedge3(e1, e2), [0, 0, -1])
    assert np.array_equal(wedge3(e1, e3), [0, -1, 0])
    assert np.array_equal(wedge3(e1 + 2 * e3, e1 + 2 * e3), [0, 0, 0])


def test_norm_examples():
    assert lorentz_norm(M3, [0, 0, 2]) == 2
    assert lorentz_norm(M2, [3, 0]) == 3
    with pytest.raises(NullVector):
        lorentz_norm(M3, [1, 0, 1])


def test_angle_law_examples():
    assert angle_law_value(AngleLaw.COS_SPAN, 0.0) == 1
    assert angle_law_value(AngleLaw.SINH_MIXED, 0.0) == 0
    with pytest.raises(OutOfRange):
        recover_angle(AngleLaw.COSH_SPAN, 0.5)
    with pytest.raises(OutOfRange):
        recover_angle(AngleLaw.COS_SPAN, 1.5)


@pytest.mark.parametrize("law, values", [
    (AngleLaw.COS_SPAN, np.linspace(-1, 1, 9)),
    (AngleLaw.COSH_SPAN, np.linspace(1, 30, 9)),
    (AngleLaw.SINH_MIXED, np.linspace(-30, 30, 9)),
])
def test_angle_round_trip(law, values):
    back = angle_law_value(law, recover_angle(law, values))
    assert np.max(np.abs(back - values)) < 1e-12 * np.max(np.abs(values))


def test_law_derivatives():
    th = np.linspace(0.1, 2.0, 7)
    h = 1e-6
    for law in AngleLaw:
        fd = (law.evaluate(th + h) - law.evaluate(th - h)) / (2 * h)
        assert np.allclose(law.derivative(th), fd, atol=1e-8)


def test_law_parse_and_select():
    assert AngleLaw.parse(" Cosh ") is AngleLaw.COSH_SPAN
    assert AngleLaw.parse("sinh-mixed") is AngleLaw.SINH_MIXED
    with pytest.raises(ValueError):
        AngleLaw.parse("tan")
    assert select_law(1, -1, 5.0) is AngleLaw.SINH_MIXED
    assert select_law(1, 1, 0.5) is AngleLaw.COS_SPAN
    assert select_law(-1, -1, 2.0) is AngleLaw.COSH_SPAN


@given(vec3, vec3)
def test_inner_symmetric(x, y):
    assert minkowski_inner(M3, x, y) == minkowski_inner(M3, y, x)


@given(vec3, vec3)
def test_wedge_orthogonal_and_antisymmetric(x, y):
    w = wedge3(x, y)
    scale = 1 + np.linalg.norm(x) ** 2 * np.linalg.norm(y)
    assert abs(minkowski_inner(M3, w, x)) < 1e-10 * scale
    assert abs(minkowski_inner(M3, w, y)) < 1e-10 * 1 + 1e-10 * np.linalg.norm(y) ** 2 * np.linalg.norm(x)
    assert np.array_equal(w + wedge3(y, x), np.zeros(3))


@settings(max_examples=200)
@given(vec3, st.floats(1e-3, 1e3), st.booleans())
def test_causal_scale_invariant(x, lam, flip):
    q = minkowski_inner(M3, x, x)
    if abs(q) < 1e-3:
        return
    lam = -lam if flip else lam
    assert causal_character(M3, lam * x) is causal_character(M3, x)


@pytest.mark.parametrize("func", [
    lambda s: np.stack([np.cos(s), np.sin(s), 0 * s], -1),
    lambda s: np.stack([np.cos(s), np.sin(s), 0.5 * s], -1),
    lambda s: np.stack([0.3 * s, np.sinh(s), np.cosh(s)], -1),
])
def test_frame_wedge_identity(func):
    space = MinkowskiCurve3(func, 0.0, 1.0)
    fr = frenet3_at(space, np.linspace(0.1, 0.9, 5))
    lhs = wedge3(fr.T, fr.N)
    assert np.max(np.abs(lhs - (fr.eps1 * fr.eps2)[:, None] * fr.B)) < 1e-8
