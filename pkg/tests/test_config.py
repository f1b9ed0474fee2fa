from pathlib import Path

import numpy as np
import pytest

from nslant import frenet, slant
from nslant.config import load_config, parse_config, parse_range
from nslant.errors import ConfigError, ParseError
from nslant.scene import build_scene

SCENES = Path(__file__).resolve().parent.parent / "scenes"

BASE = """
[surface]
name = flat-lorentz
[curve]
u = t
v = 0.2*t
[fiber]
kind = parallel
"""


def test_load_and_hash():
    cfg = load_config(SCENES / "desitter_slant.ini")
    assert cfg.params == {"c": 2.0, "v0": 0.3}
    assert cfg.number("fiber", "c") == 2.0
    assert len(cfg.sha256) == 64
    assert cfg.sha256 == load_config(SCENES / "desitter_slant.ini").sha256


def test_params_may_use_earlier_params():
    cfg = parse_config(BASE + "[params]\na = 2\nb = a^2 + 1\n")
    assert cfg.params == {"a": 2.0, "b": 5.0}


@pytest.mark.parametrize("extra, match", [
    ("[bogus]\nx = 1\n", "unknown section"),
    ("[run]\nfoo = 1\n", "unknown key"),
    ("[run]\nsamples = 8\n", "at least 16"),
    ("[run]\nsamples = 20.5\n", "integer"),
    ("[run]\ntol = 0\n", "positive"),
    ("[run]\nxi_convention = other\n", "xi_convention"),
    ("[curve]\nt0 = 1\nt1 = 0\n", None),
])
def test_rejects(extra, match):
    text = BASE + extra
    with pytest.raises(ConfigError, match=match):
        parse_config(text)


def test_curve_range_must_be_nonempty():
    with pytest.raises(ConfigError, match="t1 > t0"):
        parse_config(BASE.replace("v = 0.2*t", "v = 0.2*t\nt0 = 1\nt1 = 0"))


def test_missing_sections_and_kind():
    with pytest.raises(ConfigError, match="missing section"):
        parse_config("[surface]\nname = flat-lorentz\n")
    with pytest.raises(ConfigError, match="kind must be one of"):
        parse_config(BASE.replace("parallel", "spiral"))


def test_parse_error_names_the_entry():
    with pytest.raises(ParseError) as err:
        load_config(SCENES / "bad_expression.ini")
    assert err.value.position == 5
    assert "[curve] u" in str(err.value)


def test_unknown_identifier_in_curve():
    with pytest.raises(ParseError, match="unknown identifier"):
        parse_config(BASE.replace("u = t", "u = s"))


def test_ranges():
    assert parse_range("0.5:2.0:0.25", "r") == [0.5, 2.0, 0.25]
    assert parse_range("-pi:pi", "r", steps=False) == (-np.pi, np.pi)
    for bad in ("1:2", "2:1:0.1", "0:1:-1", "0:1:x"):
        with pytest.raises(ConfigError):
            parse_range(bad, "r")


def test_override():
    cfg = load_config(SCENES / "desitter_slant.ini")
    c2 = cfg.with_override("c", 3.0)
    assert c2.number("fiber", "c") == 3.0 and cfg.number("fiber", "c") == 2.0
    assert cfg.with_override("run.samples", 64).integer("run", "samples") == 64
    with pytest.raises(ConfigError):
        cfg.with_override("nope", 1.0)
    with pytest.raises(ConfigError):
        cfg.with_override("run.nope", 1.0)


def test_scene_builds_slant_lift():
    sc = build_scene(load_config(SCENES / "desitter_slant.ini"))
    assert sc.grid.size == 128 and sc.xi_convention == "paper-2xh"
    assert np.max(np.abs(slant.reeb_cosine(sc.lifted, sc.grid) - 2.0)) < 1e-8
    assert abs(frenet.speed(sc.chart, sc.gamma, 0.1)[1] - 2.0) < 1e-12


def test_scene_custom_metric_matches_builtin():
    text = """
[surface]
name = custom
g11 = cosh(v)^2
g12 = 0
g22 = -1
[curve]
u = 2*t/cosh(0.3)
v = 0.3
t0 = -0.5
t1 = 0.5
[fiber]
kind = angle
phi = 0.2 + 0.4*sin(2*t)
"""
    sc = build_scene(parse_config(text), samples=32)
    ref = build_scene(parse_config(text.replace("name = custom\ng11 = cosh(v)^2\ng12 = 0\ng22 = -1",
                                                "name = de-sitter")), samples=32)
    t = sc.grid
    a = slant.reeb_cosine(sc.lifted, t)
    b = slant.reeb_cosine(ref.lifted, t)
    assert np.max(np.abs(a - b)) < 1e-9


def test_scene_speed_reparametrization():
    sc = build_scene(parse_config(BASE.replace("v = 0.2*t", "v = 0.2*t\nspeed = 2")), samples=16)
    t = sc.grid
    assert np.allclose(frenet.speed(sc.chart, sc.gamma, t)[1], 2.0, atol=1e-8)


@pytest.mark.parametrize("fiber", [
    "kind = tangent", "kind = normal\nsign = -1", "kind = parallel\ncausal = timelike",
    "kind = constant-angle\nlaw = cosh\ntheta0 = 0.5", "kind = linear-angle\nlaw = cosh\na = 0.2\nb = 1",
    "kind = components\nx1 = 1\nx2 = 0.3*t",
])
def test_fiber_kinds_build(fiber):
    text = """
[surface]
name = de-sitter
[curve]
u = 2*t
v = 0.3
[fiber]
""" + fiber
    sc = build_scene(parse_config(text), samples=16)
    X = sc.lifted.X(sc.grid)
    norms = sc.chart.inner(sc.gamma(sc.grid), X, X)
    assert np.allclose(np.abs(norms), 1.0, atol=1e-9)
