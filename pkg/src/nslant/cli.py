"""Command-line front end.

    nslant classify --config scene.ini
    nslant verify prop3 --config scene.ini
    nslant sweep a 0.5:2.0:0.25 --config scene.ini --format csv

Exit status: 0 when there are no errors and every requested check holds,
1 when a check fails, 2 for config or expression errors, 3 for numerical
(geometry) errors.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .config import load_config, parse_range
from .errors import ConfigError, GeometryError
from .scene import build_scene
from .slant import classify
from .theorems import THEOREMS, TheoremSetup, verify_theorem

SCHEMA = 1
EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_GEOMETRY = 0, 1, 2, 3
XI_TEXT = {"paper-2xh": "xi = 2 u^h", "paper-half": "xi = u^h / 2"}


def build_parser():
    p = argparse.ArgumentParser(prog="nslant", description="N-Legendre / N-slant classification of lifted curves.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True, metavar="PATH")
        sp.add_argument("--samples", type=int, default=None, metavar="N", help="sample count (default 512)")
        sp.add_argument("--tol", type=float, default=None, metavar="X", help="tolerance (default 1e-6)")
        sp.add_argument("--xi-convention", choices=("paper-2xh", "paper-half"), default=None,
                        help="Reeb field normalization (default paper-2xh)")
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    common(sub.add_parser("classify", help="classify the lift described by the config"))
    v = sub.add_parser("verify", help="run one named check")
    v.add_argument("name", help=", ".join(THEOREMS))
    common(v)
    s = sub.add_parser("sweep", help="repeat classify (or [run] check) over a parameter range")
    s.add_argument("param", help="a [params] name or section.key")
    s.add_argument("range", help="start:stop:step, stop included")
    common(s)
    return p


# ---------------------------------------------------------------- running

def _options(cfg, args):
    samples = args.samples if args.samples is not None else cfg.integer("run", "samples", 512)
    tol = args.tol if args.tol is not None else cfg.number("run", "tol", 1e-6)
    xi = args.xi_convention or cfg.get("run", "xi_convention", "paper-2xh")
    if samples < 16:
        raise ConfigError("--samples must be at least 16")
    if not tol > 0:
        raise ConfigError("--tol must be positive")
    return samples, tol, xi


def run_classify(cfg, samples, tol, xi):
    sc = build_scene(cfg, samples=samples, tol=tol, xi_convention=xi)
    rep = classify(sc.lifted, sc.grid, tol=tol, law=sc.law)
    return rep


def _arithmetic_only(cfg, name):
    return name in ("thm8", "thm9", "thm8-9", "example11") and all(
        cfg.has("run", k) for k in ("a", "kappa", "sigma"))


def run_verify(cfg, name, samples, tol, xi):
    kw = {k: cfg.number("run", k) if cfg.has("run", k) else None for k in ("a", "kappa", "sigma")}
    if _arithmetic_only(cfg, name) or name == "example11":
        setup = TheoremSetup(tol=tol, **kw)
    else:
        sc = build_scene(cfg, samples=samples, tol=tol, xi_convention=xi)
        setup = TheoremSetup(lifted=sc.lifted, t=sc.grid, tol=tol, law=sc.law, **kw)
    try:
        return verify_theorem(name, setup)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def sweep_values(raw):
    start, stop, step = parse_range(raw, "sweep range")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def run_sweep(cfg, param, raw, samples, tol, xi):
    """Rows in parameter order; a failing row records its error and the sweep goes on."""
    check = cfg.get("run", "check")
    rows = []
    for val in sweep_values(raw):
        row = {"param": param, "value": val}
        try:
            c = cfg.with_override(param, val)
            if check:
                chk = run_verify(c, check.strip().lower(), samples, tol, xi)
                row.update(check=chk.name, holds=bool(chk.holds), residual=float(chk.residual), error="")
            else:
                rep = run_classify(c, samples, tol, xi)
                row.update(_classify_row(rep))
        except GeometryError as exc:
            row.update(error=exc.code, message=str(exc))
        rows.append(row)
    return rows


def _classify_row(rep):
    nrm = rep.normal
    return {
        "verdicts": ";".join(rep.verdicts),
        "max_abs_g1_N_xi": float(np.nanmax(np.abs(nrm))) if nrm is not None else float("nan"),
        "max_abs_g1_T_xi_dev": float(np.ptp(rep.tangent)) / 2,
        "error": ";".join(e["error"] for e in rep.errors),
    }


# ---------------------------------------------------------------- output

def _clean(obj, path, notes):
    """Plain JSON types; non-finite floats become null with a note."""
    if isinstance(obj, dict):
        return {str(k): _clean(v, f"{path}.{k}", notes) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v, f"{path}[{i}]", notes) for i, v in enumerate(obj)]
    if isinstance(obj, np.ndarray):
        if obj.dtype == bool:
            return [bool(x) for x in obj.ravel()]
        bad = ~np.isfinite(obj)
        if np.any(bad):
            notes.append({"error": "NonFinite", "path": path, "count": int(bad.sum())})
        return [None if not np.isfinite(x) else float(x) for x in obj.ravel()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            notes.append({"error": "NonFinite", "path": path, "count": 1})
            return None
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def render_json(report):
    notes = []
    clean = _clean(report, "$", notes)
    clean["nonfinite"] = notes
    return json.dumps(clean, sort_keys=True, indent=2, allow_nan=False) + "\n"


def render_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(row.get(h, "")) for h in header])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v)) if math.isfinite(v) else ""
    return str(v)


def _samples_table(rep):
    rec = rep.to_record()["samples"]
    keys = list(rec)
    cols = [np.full(rep.t.shape, np.nan) if rec[k] is None else np.asarray(rec[k], dtype=float) for k in keys]
    return keys, [dict(zip(keys, vals)) for vals in zip(*cols)]


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    report = {
        "schema": SCHEMA, "version": __version__,
        "command": {"name": args.command, **({"theorem": args.name} if args.command == "verify" else {}),
                    **({"param": args.param, "range": args.range} if args.command == "sweep" else {})},
        "config_sha256": None, "conventions": {}, "result": None, "errors": [], "deviations": [],
    }
    table = None
    code = EXIT_OK
    try:
        cfg = load_config(args.config)
        report["config_sha256"] = cfg.sha256
        samples, tol, xi = _options(cfg, args)
        report["conventions"] = {
            "base_signature": "(+,-)", "ambient_signature": "(+,+,-)",
            "xi_convention": xi, "xi": XI_TEXT[xi], "samples": samples, "tol": tol,
            "closed_variant": cfg.get("run", "closed_variant", "verbatim"),
        }
        if args.command == "classify":
            rep = run_classify(cfg, samples, tol, xi)
            report["result"] = {"slant_report": rep.to_record()}
            report["errors"] = list(rep.errors)
            report["deviations"] = list(rep.deviations)
            table = _samples_table(rep)
            if rep.errors:
                code = EXIT_GEOMETRY
        elif args.command == "verify":
            chk = run_verify(cfg, args.name, samples, tol, xi)
            report["result"] = {"checks": [chk.to_record()]}
            table = (["name", "holds", "residual", "tol"],
                     [{"name": chk.name, "holds": chk.holds, "residual": chk.residual, "tol": chk.tol}])
            if not chk.holds:
                code = EXIT_CHECK
        else:
            rows = run_sweep(cfg, args.param, args.range, samples, tol, xi)
            report["result"] = {"rows": rows}
            header = ["param", "value"] + sorted({k for r in rows for k in r} - {"param", "value"})
            table = (header, rows)
            if any(r.get("error") for r in rows):
                report["errors"] = [{"error": r["error"], "value": r["value"], "message": r.get("message", "")}
                                    for r in rows if r.get("error")]
                code = EXIT_GEOMETRY
            elif any(r.get("holds") is False for r in rows):
                code = EXIT_CHECK
    except ConfigError as exc:
        report["errors"] = [exc.to_record()]
        code = EXIT_CONFIG
    except GeometryError as exc:
        report["errors"] = [exc.to_record()]
        code = EXIT_GEOMETRY
    report["status"] = {EXIT_OK: "ok", EXIT_CHECK: "check-failed",
                        EXIT_CONFIG: "config-error", EXIT_GEOMETRY: "geometry-error"}[code]
    report["exit_code"] = code
    for err in report["errors"]:
        print(f"nslant: {err.get('error')}: {err.get('message', '')}", file=sys.stderr)
    if args.format == "csv" and table is not None:
        _emit(render_csv(*table), args.out)
    else:
        _emit(render_json(report), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
