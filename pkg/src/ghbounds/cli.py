"""Command-line front end: ``ghbounds <command> [flags]``.

Exit codes: 0 success, 2 parameter outside the domain, 3 numerical
non-convergence, 64 usage error (unknown or conflicting flags).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Dict, List, Optional

import numpy as np

from . import __version__
from ._backend import NAME as BACKEND
from .conjectures import (CONJECTURES, reproduce_table, schur_cdf_check,
                          sweep_monotonicity)
from .distributions import (GHParams, GammaParams, McKayParams, VG2Params,
                            VGParams, log_pdf, mean)
from .errors import ConvergenceError, DomainError
from .intervals import PROVEN_KINDS
from .median import (CDF_TOL, MEDIAN_TOL, cdf_with_error, conjectured_median_bounds,
                     median, median_bounds)
from .mode import (CLOSED_FORM, DEFAULT_TOL, gh_mean_bounds, mean_mode_gap_bounds,
                   mode, mode_bounds)

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_USAGE = 0, 2, 3, 64

COMMANDS = ("pdf", "cdf", "mean", "mode", "mode-bounds", "median", "median-bounds",
            "table", "sweep", "schur-check", "version")
DIST_COMMANDS = COMMANDS[:7]

FAMILY_FLAGS = {
    "gh": ("lambda", "alpha", "beta", "delta", "mu"),
    "vg": ("r", "theta", "sigma", "mu"),
    "vg2": ("lambda", "alpha", "beta", "mu"),
    "mckay": ("m", "b", "c", "phi"),
    "gamma": ("shape", "rate"),
}
ALL_PARAM_FLAGS = ("lambda", "alpha", "beta", "delta", "mu", "r", "theta", "sigma",
                   "m", "b", "c", "phi", "shape", "rate")
# accuracy of a single density evaluation, set by the Bessel kernel
PDF_REL_ACCURACY = 1e-12

CONJ_WARNING = "bounds tagged CONJECTURED are unproven"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    g = p.add_argument_group("distribution")
    g.add_argument("--family", choices=tuple(FAMILY_FLAGS))
    for name in ALL_PARAM_FLAGS:
        g.add_argument(f"--{name}", type=float, dest=name.replace("-", "_"))
    p.add_argument("--x", type=float, help="evaluation point for pdf/cdf")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; evaluation is single-threaded")


def build_parser():
    parser = _Parser(prog="ghbounds", description="Modes, medians and bounds of GH-type laws.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _common(p)
        if name == "mode":
            p.add_argument("--method", choices=("auto", "root_find"), default="auto")
        if name == "table":
            p.add_argument("--which", choices=("1", "2", "table1", "table2"), required=True)
        if name == "sweep":
            p.add_argument("--conjecture", choices=CONJECTURES + tuple(c.lower() for c in
                                                                        CONJECTURES),
                           required=True)
            p.add_argument("--grid-min", type=float)
            p.add_argument("--grid-max", type=float)
            p.add_argument("--points", type=int, default=20)
        if name == "schur-check":
            p.add_argument("--pairs", required=True,
                           help="'x1,x2:y1,y2;...' with x majorized by y")
            p.add_argument("--t", required=True, help="comma-separated t values")
    return parser


# ----------------------------------------------------------- distributions

def _need(args, names, family):
    vals = {}
    for n in names:
        v = getattr(args, n)
        if v is None:
            raise UsageError(f"--family {family} needs --{n}")
        vals[n] = v
    return vals


def _check_flags(args, allowed, context):
    extra = [n for n in ALL_PARAM_FLAGS if getattr(args, n) is not None and n not in allowed]
    if extra:
        raise UsageError(f"flags {', '.join('--' + e for e in extra)} conflict with {context}")


def distribution_from_args(args):
    fam = args.family
    if fam is None:
        raise UsageError("--family is required")
    _check_flags(args, FAMILY_FLAGS[fam], f"--family {fam}")
    mu = args.mu if args.mu is not None else 0.0
    if fam == "gh":
        v = _need(args, ("lambda", "alpha", "beta", "delta"), fam)
        return GHParams(v["lambda"], v["alpha"], v["beta"], v["delta"], mu)
    if fam == "vg":
        v = _need(args, ("r", "theta", "sigma"), fam)
        return VGParams(v["r"], v["theta"], v["sigma"], mu)
    if fam == "vg2":
        v = _need(args, ("lambda", "alpha", "beta"), fam)
        return VG2Params(v["lambda"], v["alpha"], v["beta"], mu)
    if fam == "mckay":
        v = _need(args, ("m", "c"), fam)
        if (args.b is None) == (args.phi is None):
            raise UsageError("--family mckay needs exactly one of --b, --phi")
        if args.phi is not None:
            return McKayParams.from_phi(v["m"], v["c"], args.phi)
        return McKayParams(v["m"], args.b, v["c"])
    v = _need(args, ("shape", "rate"), fam)
    return GammaParams(v["shape"], v["rate"])


def _inputs(args):
    d = {"family": args.family} if args.family else {}
    for n in ALL_PARAM_FLAGS:
        v = getattr(args, n)
        if v is not None:
            d[n] = v
    for n in ("x", "tol", "method", "which", "conjecture", "grid_min", "grid_max",
              "points", "pairs", "t"):
        v = getattr(args, n, None)
        if v is not None:
            d[n] = v
    return d


# ---------------------------------------------------------------- commands

def _bounds_rows(entries):
    return [b.as_dict() for b in entries]


def cmd_pdf(args):
    dist = distribution_from_args(args)
    if args.x is None:
        raise UsageError("pdf needs --x")
    lp = log_pdf(dist, args.x)
    val = math.exp(lp) if lp > -math.inf else 0.0
    return {"pdf": val, "log_pdf": lp, "achieved_tol": PDF_REL_ACCURACY * abs(val)}, []


def cmd_cdf(args):
    dist = distribution_from_args(args)
    if args.x is None:
        raise UsageError("cdf needs --x")
    tol = args.tol or CDF_TOL
    v, e = cdf_with_error(dist, args.x, tol)
    return {"cdf": v, "achieved_tol": e, "requested_tol": tol}, []


def cmd_mean(args):
    dist = distribution_from_args(args)
    m = mean(dist)
    return {"mean": m, "achieved_tol": PDF_REL_ACCURACY * max(abs(m), 1.0)}, []


def cmd_mode(args):
    dist = distribution_from_args(args)
    tol = args.tol or DEFAULT_TOL
    rep = mode(dist, tol, args.method)
    achieved = 4.0 * np.finfo(float).eps * abs(rep.mode) if rep.method == CLOSED_FORM else (
        0.0 if rep.bracket.width == 0.0 else tol * max(1.0, abs(rep.mode)))
    return {"mode": rep.mode, "method": rep.method, "residual": rep.residual,
            "iterations": rep.iterations, "bracket": rep.bracket.as_dict(),
            "achieved_tol": achieved, "requested_tol": tol}, []


def cmd_mode_bounds(args):
    dist = distribution_from_args(args)
    res = {"mode_bounds": _bounds_rows(mode_bounds(dist))}
    if not isinstance(dist, GammaParams):
        res["gap_bounds"] = _bounds_rows(mean_mode_gap_bounds(dist))
    if isinstance(dist, GHParams) and dist.delta > 0.0:
        res["mean_bounds"] = _bounds_rows(gh_mean_bounds(dist))
    res["achieved_tol"] = PDF_REL_ACCURACY
    return res, []


def cmd_median(args):
    dist = distribution_from_args(args)
    tol = args.tol or MEDIAN_TOL
    rep = median(dist, tol)
    return {"median": rep.median, "cdf_residual": rep.cdf_residual,
            "quad_error": rep.quad_error, "iterations": rep.iterations,
            "bracket": rep.bracket.as_dict(), "achieved_tol": rep.achieved,
            "requested_tol": tol}, []


def cmd_median_bounds(args):
    dist = distribution_from_args(args)
    proven = median_bounds(dist)
    conj = []
    if isinstance(dist, (VGParams, VG2Params, McKayParams)) or (
            isinstance(dist, GHParams) and (dist.delta == 0.0 or dist.lam > 0.5)):
        conj = conjectured_median_bounds(dist, endpoints=True)
    warn = [CONJ_WARNING] if conj else []
    return {"proven": _bounds_rows(proven), "conjectured": _bounds_rows(conj),
            "achieved_tol": MEDIAN_TOL}, warn


def cmd_table(args):
    _check_flags(args, (), "table")
    tol = args.tol or 1e-6
    rep = reproduce_table(args.which, tol)
    d = rep.as_dict()
    d.pop("elapsed")
    d["achieved_tol"] = tol
    d["_render"] = rep.render()
    return d, []


def _sweep_spec(args):
    cid = args.conjecture.upper()
    n = args.points
    if n < 2:
        raise UsageError("--points must be at least 2")
    if cid == "C5":
        _check_flags(args, (), "--conjecture C5")
        rng = np.random.default_rng(args.seed)
        pts = []
        while len(pts) < n:
            lam = rng.uniform(0.55, 6.0)
            alpha = rng.uniform(0.5, 4.0)
            beta = alpha * rng.uniform(0.05, 0.9)
            delta = rng.uniform(0.1, 3.0)
            pts.append(GHParams(lam, alpha, beta, delta))
        return cid, {"points": pts}
    if cid in ("C1", "C2"):
        _check_flags(args, ("r",), f"--conjecture {cid}")
        lo = args.grid_min if args.grid_min is not None else (0.05 if cid == "C1" else 2.1)
        hi = args.grid_max if args.grid_max is not None else (0.95 if cid == "C1" else 10.0)
        return cid, {"r": args.r if args.r is not None else 1.0,
                     "alpha": np.linspace(lo, hi, n).tolist()}
    if cid == "C3":
        _check_flags(args, ("r", "theta"), "--conjecture C3")
        lo = args.grid_min if args.grid_min is not None else 0.1
        hi = args.grid_max if args.grid_max is not None else 30.0
        return cid, {"r": args.r if args.r is not None else 5.0,
                     "theta": args.theta if args.theta is not None else 1.0,
                     "sigma": np.geomspace(lo, hi, n).tolist()}
    _check_flags(args, ("m", "phi"), "--conjecture C4")
    lo = args.grid_min if args.grid_min is not None else 1.01
    hi = args.grid_max if args.grid_max is not None else 16.0
    return cid, {"m": args.m if args.m is not None else 0.0,
                 "phi": args.phi if args.phi is not None else 1.0,
                 "c": np.geomspace(lo, hi, n).tolist()}


def cmd_sweep(args):
    cid, spec = _sweep_spec(args)
    tol = args.tol or MEDIAN_TOL
    res = sweep_monotonicity(cid, spec, tol).as_dict()
    res["achieved_tol"] = res["tolerance_used"]
    return res, ["sweeps are numerical evidence for a conjecture, not a proof"]


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def cmd_schur(args):
    _check_flags(args, ("r",), "schur-check")
    if args.r is None:
        raise UsageError("schur-check needs --r")
    pairs = []
    for chunk in args.pairs.split(";"):
        if not chunk.strip():
            continue
        try:
            xs, ys = chunk.split(":")
            x, y = _floats(xs), _floats(ys)
        except ValueError as exc:
            raise UsageError(f"bad --pairs entry {chunk!r}") from exc
        if len(x) != 2 or len(y) != 2:
            raise UsageError(f"bad --pairs entry {chunk!r}")
        pairs.append((x, y))
    tol = args.tol or CDF_TOL
    rows = schur_cdf_check(args.r, pairs, _floats(args.t), tol)
    return {"checks": rows, "all_ok": all(r["ok"] for r in rows), "achieved_tol": 2.0 * tol}, []


def cmd_version(args):
    return {"version": __version__, "backend": BACKEND}, []


HANDLERS = {"pdf": cmd_pdf, "cdf": cmd_cdf, "mean": cmd_mean, "mode": cmd_mode,
            "mode-bounds": cmd_mode_bounds, "median": cmd_median,
            "median-bounds": cmd_median_bounds, "table": cmd_table, "sweep": cmd_sweep,
            "schur-check": cmd_schur, "version": cmd_version}


# --------------------------------------------------------------- rendering

def _text(record):
    res = dict(record["results"])
    render = res.pop("_render", None)
    lines = [f"command: {record['command']}"]
    if render:
        lines.append(render)
        lines.append(f"max_abs_diff: {res['max_abs_diff']!r}")
        return "\n".join(lines) + "\n"
    for key, val in res.items():
        if key in ("mode_bounds", "gap_bounds", "mean_bounds", "proven", "conjectured"):
            title = "conjectured" if key == "conjectured" else key.replace("_", " ")
            lines.append(f"[{title}]")
            for b in val:
                flag = "" if b["valid"] else "  (not valid here)"
                lines.append(f"  {b['name']:<22} {b['kind']:<18} {b['value']!r}{flag}")
        elif key in ("grid", "checks"):
            lines.append(f"[{key}]")
            for row in val:
                lines.append("  " + json.dumps(row, sort_keys=True))
        else:
            lines.append(f"{key}: {val!r}" if isinstance(val, float) else f"{key}: {val}")
    for w in record["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _csv(record):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    res = dict(record["results"])
    res.pop("_render", None)
    cmd = record["command"]
    if cmd == "table":
        w.writerow([res.get("which")] + [repr(c) for c in res["cols"]])
        for r, row in zip(res["rows"], res["raw"]):
            w.writerow([repr(r)] + [repr(v) for v in row])
    elif cmd == "sweep":
        keys = sorted(res["grid"][0]["params"]) if res["grid"] else []
        w.writerow(keys + ["value", "verdict", "max_violation", "tolerance_used"])
        for g in res["grid"]:
            w.writerow([repr(g["params"][k]) for k in keys]
                       + [repr(g["value"]), res["verdict"], repr(res["max_violation"]),
                          repr(res["tolerance_used"])])
    elif cmd == "schur-check":
        w.writerow(["x1", "x2", "y1", "y2", "t", "regime", "F_x", "F_y", "margin", "ok"])
        for c in res["checks"]:
            w.writerow(c["x"] + c["y"] + [c["t"], c["regime"], c.get("F_x", ""),
                                          c.get("F_y", ""), c["margin"], c["ok"]])
    elif any(k in res for k in ("mode_bounds", "proven")):
        w.writerow(["block", "name", "value", "kind", "valid", "note"])
        for key in ("mode_bounds", "gap_bounds", "mean_bounds", "proven", "conjectured"):
            for b in res.get(key, []):
                w.writerow([key, b["name"], repr(b["value"]), b["kind"], b["valid"], b["note"]])
    else:
        w.writerow(["key", "value"])
        for k, v in res.items():
            if isinstance(v, dict):
                for kk, vv in v.items():
                    w.writerow([f"{k}.{kk}", repr(vv) if isinstance(vv, float) else vv])
            else:
                w.writerow([k, repr(v) if isinstance(v, float) else v])
    return buf.getvalue()


def render(record, fmt):
    if fmt == "json":
        res = dict(record["results"])
        res.pop("_render", None)
        return json.dumps(dict(record, results=res), sort_keys=False) + "\n"
    if fmt == "csv":
        return _csv(record)
    return _text(record)


# ---------------------------------------------------------------- entry

def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """Execute one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
        if args.command not in DIST_COMMANDS and args.family is not None:
            raise UsageError(f"--family does not apply to {args.command}")
        if args.tol is not None and not args.tol > 0.0:
            raise DomainError("requires tol > 0")
        results, warnings = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, OverflowError) as exc:
        achieved = getattr(exc, "achieved", float("nan"))
        print(f"convergence error: {exc} (achieved {achieved!r})", file=stderr)
        return EXIT_CONVERGENCE
    record = {"command": args.command, "inputs": _inputs(args), "results": results,
              "warnings": warnings}
    text = render(record, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
