"""Flat Lorentzian linear algebra in the ambient 3-space and the Lorentz plane."""

import enum

import numpy as np

from .errors import DimensionMismatch, NullVector, OutOfRange

NULL_TOL = 1e-9

M3 = (1, 1, -1)  # dx1^2 + dx2^2 - dx3^2
M2 = (1, -1)  # dx1^2 - dx2^2


class MetricSignature(tuple):
    """Diagonal signature, e.g. ``MetricSignature((1, 1, -1))``."""

    def __new__(cls, signs):
        signs = tuple(int(s) for s in signs)
        if len(signs) not in (2, 3) or any(s not in (1, -1) for s in signs):
            raise ValueError(f"signature must be 2 or 3 entries of +-1, got {signs}")
        return super().__new__(cls, signs)

    @property
    def matrix(self):
        return np.diag(np.array(self, dtype=float))


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


def _sig(sig):
    return sig if isinstance(sig, MetricSignature) else MetricSignature(sig)


def minkowski_inner(sig, x, y):
    sig = _sig(sig)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != len(sig) or y.shape[-1] != len(sig):
        raise DimensionMismatch(
            f"vectors of dimension {x.shape[-1]}, {y.shape[-1]} for signature {tuple(sig)}"
        )
    return np.sum(np.array(sig, dtype=float) * x * y, axis=-1)


def causal_character(sig, x, tol=NULL_TOL):
    q = float(minkowski_inner(sig, x, x))
    if q > tol:
        return CausalCharacter.SPACELIKE
    if q < -tol:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.NULL


def wedge3(x, y):
    """Lorentzian cross product for signature (+,+,-).

    Expansion of the determinant with first row (i, j, -k)::

        x ^ y = (x2 y3 - x3 y2, x3 y1 - x1 y3, -(x1 y2 - x2 y1))
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != 3 or y.shape[-1] != 3:
        raise DimensionMismatch("wedge3 needs 3-vectors")
    c = np.cross(x, y)
    return c * np.array([1.0, 1.0, -1.0])


def lorentz_norm(sig, x, tol=NULL_TOL):
    """sqrt(|g(x, x)|); the absolute value keeps timelike norms real."""
    q = minkowski_inner(sig, x, x)
    if np.any(np.abs(q) <= tol):
        raise NullVector(f"null vector (g(x,x) = {q})")
    return np.sqrt(np.abs(q))


class AngleLaw(enum.Enum):
    """Lorentzian angle laws: cos for a spacelike span, cosh for a timelike
    span of two spacelike vectors, sinh for vectors of different character."""

    COS_SPAN = "cos"
    COSH_SPAN = "cosh"
    SINH_MIXED = "sinh"

    def evaluate(self, theta):
        return {"cos": np.cos, "cosh": np.cosh, "sinh": np.sinh}[self.value](theta)

    def derivative(self, theta):
        if self is AngleLaw.COS_SPAN:
            return -np.sin(theta)
        if self is AngleLaw.COSH_SPAN:
            return np.sinh(theta)
        return np.cosh(theta)

    def inverse(self, value):
        """Principal inverse: [0, pi] for cos, theta >= 0 for cosh."""
        v = np.asarray(value, dtype=float)
        if self is AngleLaw.COS_SPAN:
            if np.any(np.abs(v) > 1.0):
                raise OutOfRange(f"cos law needs |L| <= 1, got {value}")
            return np.arccos(v)
        if self is AngleLaw.COSH_SPAN:
            if np.any(v < 1.0):
                raise OutOfRange(f"cosh law needs L >= 1, got {value}")
            return np.arccosh(v)
        return np.arcsinh(v)

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        aliases = {
            "cos": cls.COS_SPAN, "cosspan": cls.COS_SPAN, "cos-span": cls.COS_SPAN,
            "cosh": cls.COSH_SPAN, "coshspan": cls.COSH_SPAN, "cosh-span": cls.COSH_SPAN,
            "sinh": cls.SINH_MIXED, "sinhmixed": cls.SINH_MIXED, "sinh-mixed": cls.SINH_MIXED,
        }
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"unknown angle law {text!r}") from None


def angle_law_value(law, theta):
    return law.evaluate(theta)


def recover_angle(law, value):
    return law.inverse(value)


def select_law(eps_a, eps_b, value):
    """Pick the angle law for two unit vectors with g-signs ``eps_a``, ``eps_b``
    and inner product ``value``.

    Same causal character: cos when the pair spans a definite plane
    (|value| <= 1), cosh otherwise. Different characters: sinh.
    """
    if eps_a != eps_b:
        return AngleLaw.SINH_MIXED
    if abs(value) <= 1.0:
        return AngleLaw.COS_SPAN
    return AngleLaw.COSH_SPAN
