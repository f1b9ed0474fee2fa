"""Numerics for N-Legendre and N-slant curves in unit tangent bundles of
Lorentzian surfaces with the Sasaki metric."""

__version__ = "0.1.0"

from .errors import (ConfigError, GeometryError, GeodesicLift, NslantError, ParseError,  # noqa: E402
                     SingularSigma, UnknownFunction)
from .lorentz import (AngleLaw, CausalCharacter, MetricSignature, causal_character,  # noqa: E402
                      lorentz_norm, minkowski_inner, wedge3)
from .surface import (SurfaceChart, anti_de_sitter, custom_chart, de_sitter,  # noqa: E402
                      flat_lorentz, hyperbolic_plane, make_surface)
from .frenet import Curve, frenet2_at, frenet3_at, reparametrize_to_speed  # noqa: E402
from .bundle import LiftedCurve, contact_at, lift_curve, sasaki_metric, tangential_lift  # noqa: E402
from .slant import classify, normal_reeb_closed, normal_reeb_oracle  # noqa: E402
from .theorems import TheoremSetup, sigma_bar, verify_theorem  # noqa: E402
from .expr import Expression, parse_expression  # noqa: E402
from .config import load_config, parse_config  # noqa: E402
