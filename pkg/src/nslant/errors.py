"""Exception hierarchy.

Two roots: ``ConfigError`` for bad user input (CLI exit status 2) and
``GeometryError`` for numerical failures during evaluation (exit status 3).
"""


class NslantError(Exception):
    """Base class for all package errors."""

    code = "Error"

    def to_record(self):
        return {"error": self.code, "message": str(self)}


class ConfigError(NslantError):
    code = "ConfigError"


class ParseError(ConfigError):
    code = "ParseError"

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position

    def to_record(self):
        rec = super().to_record()
        rec["position"] = self.position
        return rec


class UnknownFunction(ParseError):
    code = "UnknownFunction"


class GeometryError(NslantError, ArithmeticError):
    code = "GeometryError"


class DimensionMismatch(GeometryError, ValueError):
    code = "DimensionMismatch"


class NullVector(GeometryError):
    code = "NullVector"


class OutOfRange(GeometryError, ValueError):
    code = "OutOfRange"


class DegenerateMetric(GeometryError):
    code = "DegenerateMetric"


class OutOfDomain(GeometryError):
    code = "OutOfDomain"


class NullSegment(GeometryError):
    code = "NullSegment"


class NullNormal(GeometryError):
    code = "NullNormal"


class GeodesicLift(GeometryError):
    code = "GeodesicLift"


class NullFrameVector(GeometryError):
    code = "NullFrameVector"


class FiberNotUnit(GeometryError):
    code = "FiberNotUnit"


class NullLift(GeometryError):
    code = "NullLift"


class LawMismatch(GeometryError):
    code = "LawMismatch"


class ImaginaryBeta(GeometryError):
    code = "ImaginaryBeta"


class NullDerivative(GeometryError):
    code = "NullDerivative"


class SingularSigma(GeometryError):
    code = "SingularSigma"
