"""Scene files: sectioned key/value text read with ``configparser``.

Every numeric value may be an expression over the names in ``[params]``;
curve, fiber and metric entries are expressions in ``t`` (or ``u``, ``v``)
plus those names. See the README for the full key list.
"""

import configparser
import hashlib
from dataclasses import dataclass, field

from .errors import ConfigError, ParseError
from .expr import Expression

SECTIONS = {
    "surface": {"name", "r", "g11", "g12", "g22", "signature", "u_range", "v_range", "closed_form"},
    "curve": {"u", "v", "t0", "t1", "speed"},
    "fiber": {"kind", "causal", "c", "theta0", "law", "phi0", "branch", "a", "b", "phi",
              "x1", "x2", "normalize", "sign"},
    "run": {"samples", "tol", "xi_convention", "law", "closed_variant", "check", "a", "kappa", "sigma"},
    "params": None,  # free names
}
REQUIRED = ("surface", "curve", "fiber")
FIBER_KINDS = ("tangent", "normal", "parallel", "angle", "constant-angle", "linear-angle", "components")
RUN_DEFAULTS = {"samples": 512, "tol": 1e-6, "xi_convention": "paper-2xh", "closed_variant": "verbatim"}


@dataclass
class SceneConfig:
    """Raw string tables per section plus the evaluated ``[params]`` values."""
    sections: dict
    params: dict = field(default_factory=dict)
    text: str = ""

    @property
    def sha256(self):
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def get(self, section, key, default=None):
        return self.sections.get(section, {}).get(key, default)

    def has(self, section, key):
        return key in self.sections.get(section, {})

    def expr(self, section, key, variables=("t",), default=None):
        """Parse an expression entry; ``ParseError`` positions refer to the entry text."""
        text = self.get(section, key, default)
        if text is None:
            raise ConfigError(f"[{section}] {key} is required")
        try:
            e = Expression(str(text), tuple(variables) + tuple(self.params))
        except ParseError as exc:
            exc.args = (f"[{section}] {key}: {exc.args[0]}",)
            exc.section, exc.key = section, key
            raise
        return _Bound(e, self.params)

    def number(self, section, key, default=None):
        if not self.has(section, key):
            if default is None:
                raise ConfigError(f"[{section}] {key} is required")
            return default
        val = self.expr(section, key, variables=())()
        return float(val)

    def integer(self, section, key, default=None):
        v = self.number(section, key, default)
        if v != int(v):
            raise ConfigError(f"[{section}] {key} must be an integer, got {v}")
        return int(v)

    def flag(self, section, key, default=False):
        raw = self.get(section, key)
        if raw is None:
            return default
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"[{section}] {key} must be a boolean, got {raw!r}")

    def range(self, section, key, default=None):
        raw = self.get(section, key)
        if raw is None:
            return default
        return parse_range(raw, f"[{section}] {key}", steps=False)

    def with_override(self, name, value):
        """Copy with ``name`` (a ``[params]`` name or ``section.key``) set to ``value``."""
        sections = {s: dict(kv) for s, kv in self.sections.items()}
        if "." in name:
            sec, key = name.split(".", 1)
            if sec not in SECTIONS:
                raise ConfigError(f"unknown section {sec!r} in sweep parameter")
            if SECTIONS[sec] is not None and key not in SECTIONS[sec]:
                raise ConfigError(f"unknown key {key!r} in [{sec}]")
            sections.setdefault(sec, {})[key] = repr(float(value))
        elif name in self.params:
            sections["params"][name] = repr(float(value))
        else:
            raise ConfigError(f"sweep parameter {name!r} is not in [params]; use section.key for other entries")
        return _finish(sections, self.text)


class _Bound:
    """Expression with the ``[params]`` values bound."""

    def __init__(self, expression, params):
        self.expression = expression
        self.params = dict(params)

    def __call__(self, *args):
        return self.expression(*args, **self.params)

    def diff(self, var):
        return _Bound(self.expression.diff(var), self.params)

    def __str__(self):
        return str(self.expression)


def parse_range(raw, what, steps=True):
    """``start:stop:step`` (inclusive) or ``lo:hi``."""
    parts = raw.split(":")
    want = 3 if steps else 2
    if len(parts) != want:
        raise ConfigError(f"{what} must look like {'start:stop:step' if steps else 'lo:hi'}, got {raw!r}")
    try:
        vals = [float(Expression(p, ())()) for p in parts]
    except ParseError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    if steps:
        start, stop, step = vals
        if step <= 0 or stop < start:
            raise ConfigError(f"{what}: need step > 0 and stop >= start")
        return vals
    if vals[1] <= vals[0]:
        raise ConfigError(f"{what}: empty range {raw!r}")
    return tuple(vals)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def parse_config(text):
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    sections = {}
    for sec in parser.sections():
        if sec not in SECTIONS:
            raise ConfigError(f"unknown section [{sec}]")
        keys = SECTIONS[sec]
        for key in parser[sec]:
            if keys is not None and key not in keys:
                raise ConfigError(f"unknown key {key!r} in [{sec}]")
        sections[sec] = dict(parser[sec])
    for sec in REQUIRED:
        if sec not in sections:
            raise ConfigError(f"missing section [{sec}]")
    return _finish(sections, text)


def _finish(sections, text):
    """Evaluate ``[params]`` in file order (later entries may use earlier ones) and validate."""
    params = {}
    for name, raw in sections.get("params", {}).items():
        if not name.isidentifier():
            raise ConfigError(f"parameter name {name!r} is not an identifier")
        try:
            params[name] = float(Expression(raw, tuple(params))(**params))
        except ParseError as exc:
            exc.args = (f"[params] {name}: {exc.args[0]}",)
            raise
    cfg = SceneConfig(sections=sections, params=params, text=text)
    _validate(cfg)
    return cfg


def _validate(cfg):
    kind = cfg.get("fiber", "kind")
    if kind is None:
        raise ConfigError("[fiber] kind is required")
    if kind.strip().lower() not in FIBER_KINDS:
        raise ConfigError(f"[fiber] kind must be one of {', '.join(FIBER_KINDS)}, got {kind!r}")
    for key in ("u", "v"):
        cfg.expr("curve", key)
    t0, t1 = cfg.number("curve", "t0", 0.0), cfg.number("curve", "t1", 1.0)
    if not t1 > t0:
        raise ConfigError("[curve] needs t1 > t0")
    if cfg.integer("run", "samples", RUN_DEFAULTS["samples"]) < 16:
        raise ConfigError("[run] samples must be at least 16")
    if not cfg.number("run", "tol", RUN_DEFAULTS["tol"]) > 0:
        raise ConfigError("[run] tol must be positive")
    xi = cfg.get("run", "xi_convention", RUN_DEFAULTS["xi_convention"])
    if xi not in ("paper-2xh", "paper-half"):
        raise ConfigError(f"[run] xi_convention must be paper-2xh or paper-half, got {xi!r}")
