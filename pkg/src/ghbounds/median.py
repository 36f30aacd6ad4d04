"""CDF evaluation and medians.

The median solver is a safeguarded Newton iteration on ``F(x) - 1/2``: the
density is the derivative, a sign-maintained bracket catches bad steps, and
``F`` is carried between iterates by integrating only the piece between
them. A fresh CDF evaluation at the final iterate provides the reported
residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from . import _quadrature as quad
from .distributions import (GHParams, GammaParams, McKayParams, VG2Params,
                            VGParams, as_vg, kernel_spec)
from .errors import ConvergenceError, DomainError, QuadratureError
from .intervals import (CONJ_LOWER, CONJ_UPPER, EQUALITY, LOWER, UPPER,
                        BoundEntry, Interval)

LOG2 = math.log(2.0)
CDF_TOL = 1e-10
MEDIAN_TOL = 1e-8
MAX_ITER = 200


@dataclass(frozen=True)
class MedianReport:
    """Median estimate with its diagnostics.

    ``cdf_residual`` is ``F(median) - 1/2`` from a fresh quadrature at the
    returned point, ``quad_error`` the error estimate of that quadrature.
    """

    median: float
    cdf_residual: float
    quad_error: float
    iterations: int
    bracket: Interval
    tol: float = MEDIAN_TOL

    @property
    def achieved(self):
        return abs(self.cdf_residual) + self.quad_error

    def as_dict(self):
        return {"median": self.median, "cdf_residual": self.cdf_residual,
                "quad_error": self.quad_error, "iterations": self.iterations,
                "bracket": self.bracket.as_dict(), "tol": self.tol,
                "achieved": self.achieved}


@dataclass(frozen=True)
class GammaMedianBounds:
    chain: tuple
    integer_chain: tuple

    def all(self):
        return list(self.chain) + list(self.integer_chain)

    def as_dict(self):
        return {"chain": [b.as_dict() for b in self.chain],
                "integer_chain": [b.as_dict() for b in self.integer_chain]}


# --------------------------------------------------------------------- CDF

def cdf_with_error(dist, x, tol=CDF_TOL):
    """``(P(X <= x), error_bound)``."""
    if not tol > 0.0:
        raise DomainError("requires tol > 0")
    sup = quad.prepare(dist, tol)
    return quad.cdf_shifted(sup, x - sup.loc, tol)


def cdf(dist, x, tol=CDF_TOL) -> float:
    """P(X <= x) to absolute accuracy ``tol``.

    Raises
    ------
    QuadratureError
        If the panel budget runs out; ``achieved`` holds the error estimate.
    """
    v, e = cdf_with_error(dist, x, tol)
    if e > tol:
        raise QuadratureError(f"CDF error estimate {e:.3g} exceeds tol {tol:.3g}", achieved=e)
    return v


# ------------------------------------------------------------------ median

def _symmetric_center(dist):
    if isinstance(dist, GHParams) and dist.beta == 0.0:
        return dist.mu
    if isinstance(dist, (VGParams, VG2Params)):
        v = as_vg(dist)
        if v.theta == 0.0:
            return v.mu
    return None


def _guess(dist, sup):
    """Starting point in shifted coordinates, from the (conjectured) chains."""
    try:
        if isinstance(dist, GammaParams):
            b = gamma_median_bounds(dist).chain
            return 0.5 * (b[1].value + b[2].value)
        if isinstance(dist, McKayParams):
            n, phi = 2.0 * dist.m + 1.0, dist.phi
            return 0.5 * n * phi * (math.exp(-2.0 * LOG2 / n) + math.exp(-1.0 / (3.0 * n)))
        if isinstance(dist, (VGParams, VG2Params)) or (isinstance(dist, GHParams)
                                                        and dist.delta == 0.0):
            v = as_vg(dist)
            if v.theta > 0.0 and v.r > 1.0:
                return 0.5 * v.theta * (v.r - 1.0 + v.r * math.exp(-2.0 / (3.0 * v.r)))
    except (DomainError, OverflowError):
        pass
    return sup.center


def _density(sup, u):
    return math.exp(sup.log_density(u))


def median(dist, tol=MEDIAN_TOL) -> MedianReport:
    """Median of ``dist``, with ``|F(median) - 1/2| <= tol``.

    Raises
    ------
    ConvergenceError
        If the iteration fails to reach ``tol`` (``achieved`` is set).
    """
    if not tol > 0.0:
        raise DomainError("requires tol > 0")
    c = _symmetric_center(dist)
    if c is not None:
        return MedianReport(c, 0.0, 0.0, 0, Interval.point(c), tol)
    kernel_spec(dist)  # validates support for CDF work (gamma > 0 for GH)
    qtol = tol / 20.0
    sup = quad.prepare(dist, qtol)
    a, b = sup.lo, sup.hi            # F(a) < 1/2 < F(b)
    x = min(max(_guess(dist, sup), a), b)
    if not a < x < b:
        x = 0.5 * (a + b)
    F, err = quad.cdf_shifted(sup, x, qtol)
    it = 0
    while it < MAX_ITER:
        it += 1
        res = F - 0.5
        if abs(res) + err <= 0.5 * tol:
            Ff, ef = quad.cdf_shifted(sup, x, qtol)
            if abs(Ff - 0.5) + ef <= tol:
                F, err = Ff, ef
                break
            F, err = Ff, ef
            res = F - 0.5
        if res < 0.0:
            a = x
        else:
            b = x
        p = _density(sup, x)
        xn = x - res / p if p > 0.0 and math.isfinite(p) else math.nan
        if not (a < xn < b) or abs(xn - x) > 0.5 * (b - a):
            xn = 0.5 * (a + b)
        if xn == x:
            break
        dv, de = quad.integrate(sup, x, xn, qtol)
        F, err = F + dv, err + de
        x = xn
        if err > 4.0 * tol:
            F, err = quad.cdf_shifted(sup, x, qtol)
    else:
        raise ConvergenceError(f"median iteration limit reached (|F-1/2|={abs(F - 0.5):.3g})",
                               achieved=abs(F - 0.5))
    res = F - 0.5
    if abs(res) > tol:
        raise ConvergenceError(f"median residual {abs(res):.3g} exceeds tol {tol:.3g}",
                               achieved=abs(res))
    p = _density(sup, x)
    half = 2.0 * (abs(res) + err) / p if p > 0.0 else (b - a)
    lo, hi = max(x - half, a), min(x + half, b)
    m = x + sup.loc
    return MedianReport(m, res, err, it, Interval(lo + sup.loc, hi + sup.loc, False, False), tol)


# ------------------------------------------------------------ closed forms

def asym_laplace_median(theta, sigma) -> float:
    """Median of VG(2, theta, sigma, 0), the asymmetric Laplace law."""
    if not sigma > 0.0:
        raise DomainError("requires sigma > 0")
    # the closed form holds for theta >= 0; reflect otherwise
    t = abs(theta)
    s = math.hypot(t, sigma)
    return math.copysign((t + s) * math.log1p(t / s), theta)


def gamma_median_bounds(g: GammaParams) -> GammaMedianBounds:
    """Bound chains for the median of Gamma(shape r, rate lam)."""
    r, lam = g.r, g.lam
    chain = (
        BoundEntry("bp06.outer_lower", (r - LOG2) / lam, LOWER, True, "r>0"),
        BoundEntry("bp06.inner_lower", r / lam * math.exp(-LOG2 / r), LOWER, True, "r>0"),
        BoundEntry("bp06.inner_upper", r / lam * math.exp(-1.0 / (3.0 * r)), UPPER, True, "r>0"),
        BoundEntry("bp06.outer_upper", (r - 1.0 / 3.0 + 1.0 / (18.0 * r)) / lam, UPPER, True,
                   "r>0"),
    )
    up = (r - 1.0 + LOG2) / lam
    integer_chain = (
        BoundEntry("gaminteger.lower", (r - 1.0 / 3.0) / lam, LOWER, r >= 1.0, "r>=1"),
        BoundEntry("gaminteger.upper", up, EQUALITY if r == 1.0 else UPPER, r >= 1.0,
                   "equality at r=1" if r == 1.0 else "r>=1"),
    )
    return GammaMedianBounds(chain, integer_chain)


# ------------------------------------------------------- conjectured bounds

def _conj_flip(entries):
    swap = {CONJ_LOWER: CONJ_UPPER, CONJ_UPPER: CONJ_LOWER}
    return [BoundEntry(e.name, -e.value, swap[e.kind], e.valid, e.note) for e in entries]


def _vg_conj(v: VGParams, endpoints):
    r, th = v.r, v.theta
    out = [
        BoundEntry("c3.lower", (r - 1.0) * th, CONJ_LOWER, True, "r>0"),
        BoundEntry("c3.upper", r * th * math.exp(-2.0 / (3.0 * r)), CONJ_UPPER, True, "r>0"),
        BoundEntry("c3.upper_outer", (r - 2.0 / 3.0 + 2.0 / (9.0 * r)) * th, CONJ_UPPER, True,
                   "r>0"),
        BoundEntry("concon", (r + 2.0 * LOG2 - 2.0) * th, CONJ_UPPER, r >= 2.0, "r>=2"),
    ]
    if endpoints:
        g = median(GammaParams(0.5 * r, 1.0 / (2.0 * th))).median
        out.append(BoundEntry("c3.gamma_endpoint", g, CONJ_UPPER, True,
                              "median of Gamma(r/2, rate 1/(2 theta))"))
    return out


def _mckay_conj(p: McKayParams, endpoints):
    m, phi = p.m, p.phi
    n = 2.0 * m + 1.0
    out = [
        BoundEntry("c4.lower_outer", (n - 2.0 * LOG2) * phi, CONJ_LOWER, True, "m>-1/2"),
        BoundEntry("c4.lower", n * phi * math.exp(-2.0 * LOG2 / n), CONJ_LOWER, True, "m>-1/2"),
        BoundEntry("c4.upper", n * phi * math.exp(-1.0 / (3.0 * n)), CONJ_UPPER, True, "m>-1/2"),
        BoundEntry("c4.upper_outer", (n - 1.0 / 3.0 + 1.0 / (18.0 * n)) * phi, CONJ_UPPER, True,
                   "m>-1/2"),
        BoundEntry("c4.integer_lower", (2.0 * m + 1.0 / 3.0) * phi, CONJ_LOWER, m >= 0.5,
                   "m>=1/2"),
        BoundEntry("c4.integer_upper", (2.0 * m + LOG2) * phi, CONJ_UPPER, m >= 0.5, "m>=1/2"),
    ]
    if endpoints:
        lo = median(GammaParams(m + 0.5, 1.0 / (2.0 * phi))).median
        hi = median(GammaParams(n, 1.0 / phi)).median
        out.append(BoundEntry("c4.gamma_lower", lo, CONJ_LOWER, True,
                              "median of Gamma(m+1/2, rate 1/(2 phi))"))
        out.append(BoundEntry("c4.gamma_upper", hi, CONJ_UPPER, True,
                              "median of Gamma(2m+1, rate 1/phi)"))
    return out


def _gh_conj(p: GHParams):
    g = p.gamma
    t = p.beta / (g * g)
    u = p.lam - 0.5
    d2 = (p.delta * g) ** 2
    root = math.sqrt(u * u + d2)
    return [BoundEntry("c5.lower", t * (u + root), CONJ_LOWER, True, "lambda>1/2")]


def conjectured_median_bounds(dist, endpoints=False) -> List[BoundEntry]:
    """Conjectured (unproven) median bounds; values include ``mu``.

    ``endpoints=True`` adds the gamma-median endpoints, which cost two
    quadrature solves.
    """
    if isinstance(dist, McKayParams):
        return _mckay_conj(dist, endpoints)
    if isinstance(dist, GHParams) and dist.delta > 0.0:
        if dist.lam <= 0.5:
            raise DomainError("requires lambda > 1/2 for the conjectured GH median bound")
        if dist.gamma == 0.0:
            raise DomainError("requires gamma > 0")
        if dist.beta == 0.0:
            return []
        q = GHParams(dist.lam, dist.alpha, abs(dist.beta), dist.delta)
        out = _gh_conj(q)
        out = out if dist.beta > 0.0 else _conj_flip(out)
        return [BoundEntry(e.name, e.value + dist.mu, e.kind, e.valid, e.note) for e in out]
    if isinstance(dist, (VGParams, VG2Params, GHParams)):
        v = as_vg(dist)
        if v.theta == 0.0:
            return []
        q = VGParams(v.r, abs(v.theta), v.sigma)
        out = _vg_conj(q, endpoints)
        out = out if v.theta > 0.0 else _conj_flip(out)
        return [BoundEntry(e.name, e.value + v.mu, e.kind, e.valid, e.note) for e in out]
    raise DomainError(f"no conjectured median bounds for {type(dist).__name__}")


def median_bounds(dist) -> List[BoundEntry]:
    """Proven median bounds (gamma family only; symmetric laws give equality)."""
    if isinstance(dist, GammaParams):
        return gamma_median_bounds(dist).all()
    c = _symmetric_center(dist)
    if c is not None:
        return [BoundEntry("symmetric", c, EQUALITY, True, "symmetric law")]
    return []


__all__ = ["MedianReport", "GammaMedianBounds", "cdf", "cdf_with_error", "median",
           "asym_laplace_median", "gamma_median_bounds", "conjectured_median_bounds",
           "median_bounds", "CDF_TOL", "MEDIAN_TOL"]
