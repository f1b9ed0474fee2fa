"""Build chart, base curve, fiber and lift from a ``SceneConfig``."""

from dataclasses import dataclass

import numpy as np

from . import bundle, fibers, surface
from .errors import ConfigError
from .frenet import Curve, reparametrize_to_speed
from .lorentz import AngleLaw


@dataclass
class Scene:
    chart: object
    gamma: object
    fiber: object
    lifted: object
    grid: np.ndarray
    tol: float
    law: object
    closed_variant: str
    xi_convention: str


def build_chart(cfg):
    name = cfg.get("surface", "name", "de-sitter").strip().lower()
    closed = cfg.flag("surface", "closed_form", False)
    if name == "custom":
        comps = [cfg.expr("surface", k, variables=("u", "v")) for k in ("g11", "g12", "g22")]
        sig = tuple(int(s) for s in cfg.get("surface", "signature", "1,-1").split(","))
        dom = (cfg.range("surface", "u_range", (-10.0, 10.0)), cfg.range("surface", "v_range", (-10.0, 10.0)))
        try:
            return surface.custom_chart(*comps, signature=sig, domain=dom)
        except ValueError as exc:
            raise ConfigError(f"[surface] {exc}") from None
    if cfg.has("surface", "g11"):
        raise ConfigError("[surface] metric components need name = custom")
    try:
        return surface.make_surface(name, r=cfg.number("surface", "r", 1.0), closed_form=closed)
    except ValueError as exc:
        raise ConfigError(f"[surface] {exc}") from None


def build_curve(cfg, chart):
    u, v = cfg.expr("curve", "u"), cfg.expr("curve", "v")
    du, dv = u.diff("t"), v.diff("t")
    t0, t1 = cfg.number("curve", "t0", 0.0), cfg.number("curve", "t1", 1.0)

    def func(t):
        t = np.asarray(t, dtype=float)
        return np.stack(np.broadcast_arrays(u(t), v(t)), axis=-1) * np.ones(np.shape(t) + (1,))

    def velocity(t):
        t = np.asarray(t, dtype=float)
        return np.stack(np.broadcast_arrays(du(t), dv(t)), axis=-1) * np.ones(np.shape(t) + (1,))

    gamma = Curve(func, t0, t1, derivative=velocity)
    if cfg.has("curve", "speed"):
        gamma = reparametrize_to_speed(chart, gamma, cfg.number("curve", "speed"))
    return gamma


def build_fiber(cfg, chart, gamma):
    kind = cfg.get("fiber", "kind").strip().lower()
    causal = cfg.get("fiber", "causal", "spacelike")
    phi0 = cfg.number("fiber", "phi0", 0.0)
    branch = cfg.number("fiber", "branch", 1.0)
    if kind == "tangent":
        return fibers.tangent_fiber(chart, gamma)
    if kind == "normal":
        return fibers.normal_fiber(chart, gamma, sign=cfg.number("fiber", "sign", 1.0))
    if kind == "parallel":
        return fibers.parallel_fiber(chart, gamma, phi0=phi0, causal=causal)
    if kind == "angle":
        phi = cfg.expr("fiber", "phi")
        return fibers.frame_angle_fiber(chart, gamma, phi, causal=causal)
    if kind == "constant-angle":
        if cfg.has("fiber", "c"):
            c = cfg.number("fiber", "c")
        else:
            law = AngleLaw.parse(cfg.get("fiber", "law", "cosh"))
            c = float(law.evaluate(cfg.number("fiber", "theta0")))
        return fibers.constant_angle_fiber(chart, gamma, c, phi0=phi0, causal=causal, branch=branch)
    if kind == "linear-angle":
        law = AngleLaw.parse(cfg.get("fiber", "law", "sinh"))
        return fibers.linear_angle_fiber(chart, gamma, cfg.number("fiber", "a"), cfg.number("fiber", "b", 0.0),
                                         law, phi0=phi0, causal=causal, branch=branch)
    # components
    x1, x2 = cfg.expr("fiber", "x1"), cfg.expr("fiber", "x2")

    def comps(t):
        t = np.asarray(t, dtype=float)
        return np.stack(np.broadcast_arrays(x1(t), x2(t)), axis=-1) * np.ones(np.shape(t) + (1,))

    return fibers.component_fiber(chart, gamma, comps, normalize=cfg.flag("fiber", "normalize", True))


def build_scene(cfg, samples=None, tol=None, xi_convention=None):
    """Assemble a ``Scene``; explicit arguments override the ``[run]`` section."""
    chart = build_chart(cfg)
    gamma = build_curve(cfg, chart)
    X = build_fiber(cfg, chart, gamma)
    xi = xi_convention or cfg.get("run", "xi_convention", "paper-2xh")
    lifted = bundle.lift_curve(chart, gamma, X, xi_convention=xi)
    n = samples if samples is not None else cfg.integer("run", "samples", 512)
    if n < 16:
        raise ConfigError("samples must be at least 16")
    law = cfg.get("run", "law")
    law = AngleLaw.parse(law) if law else None
    variant = cfg.get("run", "closed_variant", "verbatim")
    return Scene(chart=chart, gamma=gamma, fiber=X, lifted=lifted, grid=gamma.grid(n),
                 tol=tol if tol is not None else cfg.number("run", "tol", 1e-6),
                 law=law, closed_variant=variant, xi_convention=xi)
