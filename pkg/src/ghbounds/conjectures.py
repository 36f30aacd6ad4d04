"""Numerical evidence for the median monotonicity conjectures.

``Z_alpha = alpha X1 + (2 - alpha) X2`` with ``X_i ~ Gamma(r, 1)`` is
mapped onto a family with a known density:

* ``0 < alpha < 2``, ``alpha != 1``: McKay with ``m = r - 1/2``, ``phi = 1``
  and ``c = 1/(1 - a)``, ``a = min(alpha, 2 - alpha)`` (Z_alpha and
  Z_{2-alpha} share a law)
* ``alpha = 1``: Gamma(2r, rate 1)
* ``alpha = 2``: Gamma(r, rate 1/2)
* ``alpha > 2``: VG(2r, theta=1, sigma=sqrt((alpha-1)^2 - 1))

These mappings are our own algebra; the tests confirm them against the
Monte Carlo sampler.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .distributions import (GammaParams, GHParams, McKayParams, VGParams,
                            sample_gamma_combo)
from .errors import DomainError
from .intervals import CONJ_LOWER
from .median import MEDIAN_TOL, conjectured_median_bounds, cdf_with_error, median

MONOTONE = "monotone_consistent"
VIOLATION = "violation_found"
CONJECTURES = ("C1", "C2", "C3", "C4", "C5")

# medians as printed, VG(r, 1, sigma, 0)
TABLE1 = {
    "rows": (0.5, 1.0, 2.5, 5.0, 10.0),
    "cols": (0.1, 0.3, 1.0, 3.0, 10.0, 30.0),
    "row_label": "r", "col_label": "sigma",
    "values": (
        ("0.0863", "0.0798", "0.0502", "0.0195", "0.00582", "0.00192"),
        ("0.454", "0.444", "0.380", "0.276", "0.198", "0.157"),
        ("1.872", "1.861", "1.775", "1.621", "1.531", "1.507"),
        ("4.350", "4.338", "4.246", "4.084", "4.012", "4.001"),
        ("9.340", "9.328", "9.233", "9.071", "9.009", "9.001"),
    ),
}

# medians as printed, McKay(m, c) with phi = 1
TABLE2 = {
    "rows": (0.0, 1.0, 2.5, 5.0, 10.0),
    "cols": (1.01, 1.04, 1.2, 1.8, 4.0, 16.0),
    "row_label": "m", "col_label": "c",
    "values": (
        ("0.458", "0.466", "0.517", "0.619", "0.679", "0.692"),
        ("2.369", "2.378", "2.425", "2.545", "2.647", "2.672"),
        ("5.351", "5.361", "5.408", "5.526", "5.637", "5.668"),
        ("10.344", "10.354", "10.401", "10.518", "10.633", "10.666"),
        ("20.341", "20.350", "20.397", "20.514", "20.630", "20.665"),
    ),
}

TABLES = {"table1": TABLE1, "table2": TABLE2}


@dataclass(frozen=True)
class TableReport:
    which: str
    rows: tuple
    cols: tuple
    values: tuple        # rounded like the printed entries
    reference: tuple
    max_abs_diff: float
    raw: tuple = ()
    elapsed: float = 0.0

    def as_dict(self):
        return {"which": self.which, "rows": list(self.rows), "cols": list(self.cols),
                "values": [list(r) for r in self.values],
                "reference": [list(r) for r in self.reference],
                "raw": [list(r) for r in self.raw],
                "max_abs_diff": self.max_abs_diff, "elapsed": self.elapsed}

    def render(self):
        """Aligned plain text in the printed layout plus a diff column."""
        spec = TABLES[self.which]
        head = f"{spec['row_label']}\\{spec['col_label']}"
        lines = [f"{head:>8}" + "".join(f"{c:>11g}" for c in self.cols) + f"{'max|diff|':>12}"]
        for i, r in enumerate(self.rows):
            diffs = max(abs(self.raw[i][j] - self.reference[i][j]) for j in range(len(self.cols)))
            row = "".join(f"{v:>11}" for v in self.values[i])
            lines.append(f"{r:>8g}{row}{diffs:>12.2e}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SweepResult:
    conjecture_id: str
    grid: list
    verdict: str
    max_violation: float
    tolerance_used: float
    inconclusive: int = 0
    endpoint_checks: list = field(default_factory=list)

    def as_dict(self):
        return {"conjecture_id": self.conjecture_id, "verdict": self.verdict,
                "max_violation": self.max_violation, "tolerance_used": self.tolerance_used,
                "inconclusive": self.inconclusive,
                "grid": [{"params": p, "value": v} for p, v in self.grid],
                "endpoint_checks": self.endpoint_checks}


# ---------------------------------------------------------------- tables

def _round_like(value, ref: str):
    dec = len(ref.split(".")[1]) if "." in ref else 0
    return f"{value:.{dec}f}"


def reproduce_table(which="table1", tol=1e-6) -> TableReport:
    """Recompute the 30 medians of ``table1`` (VG) or ``table2`` (McKay)."""
    which = {"1": "table1", "2": "table2"}.get(str(which), str(which))
    if which not in TABLES:
        raise DomainError("requires which in {table1, table2}")
    spec = TABLES[which]
    t0 = time.perf_counter()
    raw, shown = [], []
    for r in spec["rows"]:
        row = []
        for c in spec["cols"]:
            d = VGParams(r, 1.0, c) if which == "table1" else McKayParams.from_phi(r, c, 1.0)
            row.append(median(d, tol).median)
        raw.append(tuple(row))
    ref = tuple(tuple(float(v) for v in row) for row in spec["values"])
    for i, row in enumerate(raw):
        shown.append(tuple(_round_like(v, s) for v, s in zip(row, spec["values"][i])))
    diff = max(abs(a - b) for ra, rb in zip(raw, ref) for a, b in zip(ra, rb))
    return TableReport(which, spec["rows"], spec["cols"], tuple(shown), ref, diff,
                       tuple(raw), time.perf_counter() - t0)


# -------------------------------------------------------------- Z_alpha

def z_alpha_distribution(r, alpha):
    """Record whose law is ``alpha X1 + (2 - alpha) X2``."""
    if not r > 0.0:
        raise DomainError("requires r > 0")
    if not alpha > 0.0:
        raise DomainError("requires alpha > 0")
    if alpha == 1.0:
        return GammaParams(2.0 * r, 1.0)
    if alpha == 2.0:
        return GammaParams(r, 0.5)
    if alpha > 2.0:
        return VGParams(2.0 * r, 1.0, math.sqrt(alpha * (alpha - 2.0)))
    a = min(alpha, 2.0 - alpha)
    return McKayParams.from_phi(r - 0.5, 1.0 / (1.0 - a), 1.0)


def z_alpha_median(r, alpha, tol=MEDIAN_TOL) -> float:
    return median(z_alpha_distribution(r, alpha), tol).median


def gamma_combo_distribution(shape, c1, c2):
    """Record for ``c1 X1 + c2 X2`` with ``c1, c2 >= 0`` not both zero."""
    if c1 < 0.0 or c2 < 0.0 or c1 + c2 == 0.0:
        raise DomainError("requires nonnegative scales with a positive sum")
    lo, hi = min(c1, c2), max(c1, c2)
    if lo == hi:
        return GammaParams(2.0 * shape, 1.0 / hi)
    if lo == 0.0:
        return GammaParams(shape, 1.0 / hi)
    return McKayParams.from_phi(shape - 0.5, (lo + hi) / (hi - lo), 0.5 * (lo + hi))


# ----------------------------------------------------------------- sweeps

def _pair_tol(a, b, tol):
    return 2.0 * tol + 1e-9 + 0.5 * (a.bracket.width + b.bracket.width)


def _monotone(reports, increasing, tol):
    worst, used, inconclusive = 0.0, 0.0, 0
    for a, b in zip(reports[:-1], reports[1:]):
        step = b.median - a.median if increasing else a.median - b.median
        t = _pair_tol(a, b, tol)
        used = max(used, t)
        if step <= 0.0:
            worst = max(worst, -step)
            if -step <= t:
                inconclusive += 1
    return worst, used, inconclusive


def _check(name, lhs, rhs, slack):
    """Record ``lhs < rhs`` with ``slack``; returns the violation amount."""
    v = max(lhs - rhs, 0.0)
    return {"check": name, "lhs": lhs, "rhs": rhs, "ok": v <= slack}, v


def sweep_monotonicity(conjecture_id, grid_spec: Dict, tol=MEDIAN_TOL) -> SweepResult:
    """Evaluate medians along a grid and judge the conjectured ordering.

    ``grid_spec`` keys by conjecture:

    * C1: ``r``, ``alpha`` (values in (0, 1)), non-decreasing
    * C2: ``r``, ``alpha`` (values in (2, inf)), non-increasing
    * C3: ``r``, ``theta``, ``sigma``, strictly decreasing in sigma
    * C4: ``m``, ``phi``, ``c``, strictly increasing in c
    * C5: ``points``, a list of GHParams; median above the conjectured bound

    Violations smaller than the combined tolerance count as inconclusive.
    """
    cid = str(conjecture_id).upper()
    if cid not in CONJECTURES:
        raise DomainError(f"requires conjecture id in {CONJECTURES}")
    checks, worst_end = [], 0.0
    slack = 2.0 * tol + 1e-9

    if cid == "C5":
        grid, worst = [], 0.0
        for p in grid_spec["points"]:
            rep = median(p, tol)
            entries = conjectured_median_bounds(p)
            bound = entries[0].value if entries else None
            grid.append(({"lambda": p.lam, "alpha": p.alpha, "beta": p.beta,
                          "delta": p.delta, "mu": p.mu, "bound": bound}, rep.median))
            for e in entries:
                # negative beta mirrors the bound into an upper one
                gap = e.value - rep.median if e.kind == CONJ_LOWER else rep.median - e.value
                worst = max(worst, gap)
        verdict = MONOTONE if worst <= slack else VIOLATION
        return SweepResult(cid, grid, verdict, max(worst, 0.0), slack)

    if cid in ("C1", "C2"):
        r = float(grid_spec["r"])
        xs = sorted(float(a) for a in grid_spec["alpha"])
        if cid == "C1" and not all(0.0 < a < 1.0 for a in xs):
            raise DomainError("C1 sweeps alpha in (0, 1)")
        if cid == "C2" and not all(a > 2.0 for a in xs):
            raise DomainError("C2 sweeps alpha in (2, inf)")
        reps = [median(z_alpha_distribution(r, a), tol) for a in xs]
        grid = [({"r": r, "alpha": a}, rep.median) for a, rep in zip(xs, reps)]
        worst, used, inc = _monotone(reps, cid == "C1", tol)
        edge = median(GammaParams(r, 0.5), tol).median      # alpha -> 0 and alpha = 2
        if cid == "C1":
            top = median(GammaParams(2.0 * r, 1.0), tol).median
            for a, rep in zip(xs, reps):
                for c, v in (_check(f"Med(2 Gamma(r)) <= Med(Z_{a:g})", edge, rep.median, slack),
                             _check(f"Med(Z_{a:g}) <= Med(Gamma(2r))", rep.median, top, slack)):
                    checks.append(c)
                    worst_end = max(worst_end, v)
        else:
            for a, rep in zip(xs, reps):
                c, v = _check(f"Med(Z_{a:g}) <= Med(2 Gamma(r))", rep.median, edge, slack)
                checks.append(c)
                worst_end = max(worst_end, v)
    elif cid == "C3":
        r, th = float(grid_spec["r"]), float(grid_spec.get("theta", 1.0))
        xs = sorted(float(s) for s in grid_spec["sigma"])
        reps = [median(VGParams(r, th, s), tol) for s in xs]
        grid = [({"r": r, "theta": th, "sigma": s}, rep.median) for s, rep in zip(xs, reps)]
        worst, used, inc = _monotone(reps, False, tol)
        if th > 0.0:
            g = median(GammaParams(0.5 * r, 1.0 / (2.0 * th)), tol).median
            for s, rep in zip(xs, reps):
                c, v = _check(f"Med(VG(sigma={s:g})) < Med(Gamma(r/2))", rep.median, g, slack)
                checks.append(c)
                worst_end = max(worst_end, v)
    else:  # C4
        m, phi = float(grid_spec["m"]), float(grid_spec.get("phi", 1.0))
        xs = sorted(float(c) for c in grid_spec["c"])
        reps = [median(McKayParams.from_phi(m, c, phi), tol) for c in xs]
        grid = [({"m": m, "phi": phi, "c": c}, rep.median) for c, rep in zip(xs, reps)]
        worst, used, inc = _monotone(reps, True, tol)
        lo = median(GammaParams(m + 0.5, 1.0 / (2.0 * phi)), tol).median
        hi = median(GammaParams(2.0 * m + 1.0, 1.0 / phi), tol).median
        for c, rep in zip(xs, reps):
            for chk, v in (_check(f"Med(Gamma(m+1/2)) < Med(Z_c={c:g})", lo, rep.median, slack),
                           _check(f"Med(Z_c={c:g}) < Med(Gamma(2m+1))", rep.median, hi, slack)):
                checks.append(chk)
                worst_end = max(worst_end, v)

    bad = (worst > used and worst > 0.0) or any(not c["ok"] for c in checks)
    return SweepResult(cid, grid, VIOLATION if bad else MONOTONE, max(worst, worst_end),
                       used, inc, checks)


# ------------------------------------------------------------------ Schur

def majorizes(y, x, rtol=1e-12):
    """True when ``x`` is majorized by ``y`` (two components)."""
    sx, sy = x[0] + x[1], y[0] + y[1]
    return abs(sx - sy) <= rtol * max(abs(sx), 1.0) and max(x) <= max(y) * (1.0 + rtol)


def schur_cdf_check(r, pairs: Sequence, t_grid: Sequence, tol=1e-10) -> List[dict]:
    """Check ``F(c; t) = P(c1 X1 + c2 X2 <= t)`` ordering for majorized pairs.

    Each item of ``pairs`` is ``(x, y)`` with ``x`` majorized by ``y``. For
    ``t <= r (c1 + c2)`` the expected order is ``F(x; t) <= F(y; t)``; for
    ``t >= (r + 1/2)(c1 + c2)`` it is reversed. Points in between are
    reported as skipped.
    """
    out = []
    for x, y in pairs:
        x, y = tuple(map(float, x)), tuple(map(float, y))
        if not majorizes(y, x):
            raise DomainError(f"{x} is not majorized by {y}")
        total = x[0] + x[1]
        dx, dy = gamma_combo_distribution(r, *x), gamma_combo_distribution(r, *y)
        for t in t_grid:
            item = {"x": list(x), "y": list(y), "t": float(t)}
            if t <= r * total:
                item["regime"] = "convex"
            elif t >= (r + 0.5) * total:
                item["regime"] = "concave"
            else:
                item.update(regime="skipped", ok=True, margin=None)
                out.append(item)
                continue
            fx, ex = cdf_with_error(dx, t, tol)
            fy, ey = cdf_with_error(dy, t, tol)
            margin = fy - fx if item["regime"] == "convex" else fx - fy
            item.update(F_x=fx, F_y=fy, margin=margin, ok=margin >= -(ex + ey))
            out.append(item)
    return out


# ------------------------------------------------------------ Monte Carlo

def monte_carlo_median(shape, scale1, scale2, n, seed, z=3.0):
    """Empirical median of ``scale1 X1 + scale2 X2`` and an order-statistic half-width.

    The half-width spans ranks ``n/2 -+ z sqrt(n)/2``, a distribution-free
    confidence interval for the median at about ``z`` standard errors.
    """
    n = int(n)
    if n < 10_000:
        raise DomainError("requires n >= 10^4")
    xs = np.sort(sample_gamma_combo(shape, scale1, scale2, n, seed))
    est = float(np.median(xs))
    k = z * math.sqrt(n) / 2.0
    lo = xs[max(int(math.floor(n / 2 - k)), 0)]
    hi = xs[min(int(math.ceil(n / 2 + k)), n - 1)]
    return est, float(0.5 * (hi - lo))


__all__ = ["TABLE1", "TABLE2", "TableReport", "SweepResult", "reproduce_table",
           "z_alpha_distribution", "z_alpha_median", "gamma_combo_distribution",
           "sweep_monotonicity", "majorizes", "schur_cdf_check", "monte_carlo_median",
           "MONOTONE", "VIOLATION"]
