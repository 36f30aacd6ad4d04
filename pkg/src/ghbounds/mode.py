"""Modes of the GH, VG and McKay Type I distributions and their bounds.

Every family here is unimodal, and its mode is the unique root of a
stationarity equation written with a Bessel ratio:

* GH:    ``x/q * K_{lam-3/2}(alpha q)/K_{lam-1/2}(alpha q) = beta/alpha``,
  ``q = sqrt(delta^2 + x^2)``
* VG:    ``K_{(r-3)/2}(s x/sigma^2)/K_{(r-1)/2}(s x/sigma^2) = theta/s``,
  ``s = sqrt(theta^2 + sigma^2)``
* McKay: ``I_m(x/b)/I_{m-1}(x/b) = 1/c``

The root is bracketed by the sharpest valid analytic bounds and polished
with Brent's method. Bound values are reported in the distribution's own
coordinates (``mu`` added back); gap bounds on ``E[X] - M`` are shift-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from ._backend import kernel
from .distributions import (GHParams, McKayParams, VG2Params, VGParams, as_vg,
                            convert_vg2_to_vg, gh_mean, mckay_mean, vg_mean)
from .errors import BracketError, DomainError
from .intervals import (EQUALITY, LOWER, UPPER, BoundEntry, Interval)

CLOSED_FORM = "closed_form"
ROOT_FIND = "root_find"
AT_ORIGIN = "at_origin"

DEFAULT_TOL = 1e-12
_EPS = np.finfo(float).eps
UNDERFLOW_MODE = 1e-300
UNDERFLOW_NOTE = "mode below 1e-300 from the origin; reported as 0, residual contract not attainable"


@dataclass(frozen=True)
class ModeReport:
    """Result of a mode computation.

    ``residual`` is the left side minus the right side of the stationarity
    equation at ``mode`` (0 for closed forms is not assumed; it is evaluated).
    """

    mode: float
    residual: float
    bracket: Interval
    bounds: tuple
    iterations: int
    method: str
    tol: float = DEFAULT_TOL
    notes: tuple = field(default=())

    def as_dict(self):
        return {
            "mode": self.mode, "residual": self.residual,
            "bracket": self.bracket.as_dict(), "iterations": self.iterations,
            "method": self.method, "tol": self.tol,
            "bounds": [b.as_dict() for b in self.bounds],
            "notes": list(self.notes),
        }


# ------------------------------------------------------------------ helpers

def _plus_root(u, w2):
    """``u + sqrt(u^2 + w2)`` without cancellation when u < 0."""
    rad = u * u + w2
    if rad < 0.0:
        rad = 0.0
    root = math.sqrt(rad)
    if u >= 0.0:
        return u + root
    den = root - u
    return w2 / den if den > 0.0 else 0.0


def _oriented(name, value, par, pivot, above_kind, valid_above=True,
              valid_eq=True, valid_below=True, note=""):
    """Bound of kind ``above_kind`` for par > pivot, equality at pivot, reversed below."""
    if par == pivot:
        return BoundEntry(name, value, EQUALITY, valid_eq, note)
    if par > pivot:
        return BoundEntry(name, value, above_kind, valid_above, note)
    flipped = UPPER if above_kind == LOWER else LOWER
    return BoundEntry(name, value, flipped, valid_below, note)


def _flip(entries):
    """Bounds for the mirrored distribution: negate values, swap lower/upper."""
    swap = {LOWER: UPPER, UPPER: LOWER}
    return [BoundEntry(e.name, -e.value, swap.get(e.kind, e.kind), e.valid, e.note)
            for e in entries]


def _shift(entries, mu):
    if mu == 0.0:
        return list(entries)
    return [BoundEntry(e.name, e.value + mu, e.kind, e.valid, e.note) for e in entries]


def sharpest(entries, slack=0.0):
    """``(lo, hi)`` from the tightest valid proven bounds (None where absent)."""
    lo = hi = None
    for e in entries:
        if not e.valid:
            continue
        if e.kind in (LOWER, EQUALITY):
            lo = e.value if lo is None else max(lo, e.value)
        if e.kind in (UPPER, EQUALITY):
            hi = e.value if hi is None else min(hi, e.value)
    return lo, hi


def gh_from_theta_sigma(lam, theta, sigma, delta, mu=0.0) -> GHParams:
    """GH record from ``theta = beta/gamma^2`` and ``sigma = 1/gamma``."""
    if sigma <= 0.0:
        raise DomainError("requires sigma > 0")
    g = 1.0 / sigma
    beta = theta / (sigma * sigma)
    return GHParams(lam, math.hypot(g, beta), beta, delta, mu)


# --------------------------------------------------------------- residuals

def gh_mode_residual(p: GHParams, x):
    """Left minus right side of the GH stationarity equation at shifted ``x``."""
    q = math.hypot(p.delta, x)
    if q == 0.0:
        return -p.beta / p.alpha
    return x / q * kernel.kratio(p.lam - 0.5, p.alpha * q) - p.beta / p.alpha


def vg_mode_residual(p: VGParams, x):
    s = p.s
    if x <= 0.0:
        return -p.theta / s
    return kernel.kratio(0.5 * (p.r - 1.0), s * x / p.sigma ** 2) - p.theta / s


def mckay_mode_residual(p: McKayParams, x):
    if x <= 0.0:
        return -1.0 / p.c
    return kernel.iratio(p.m, x / p.b) - 1.0 / p.c


# ---------------------------------------------------------------- GH bounds

def _gh_bounds_pos(p: GHParams):
    lam, alpha, delta = p.lam, p.alpha, p.delta
    g = p.gamma
    t = p.beta / (g * g)
    d2 = (delta * g) ** 2
    dpos = delta > 0.0

    def b(a):
        return t * _plus_root(lam - a, d2)

    out = [
        BoundEntry("mode1.lower", b(1.5), LOWER, dpos or lam > 1.5,
                   "delta>0 (any lambda), or delta=0 and lambda>3/2"),
        BoundEntry("mode1.upper", b(0.5), UPPER, dpos or lam > 0.5,
                   "delta>0 (any lambda), or delta=0 and lambda>1/2"),
        _oriented("mode2", b(1.0), lam, 1.0, UPPER,
                  valid_above=True, valid_eq=True, valid_below=dpos,
                  note="upper for lambda>1, equality at lambda=1, lower for lambda<1 (delta>0)"),
    ]
    w2 = g * g * (delta * delta + (3.0 - 2.0 * lam) / (alpha * alpha))
    v29 = t * _plus_root(lam - 1.0, w2)
    out.append(_oriented(
        "mode29", v29, lam, 2.0, LOWER,
        valid_above=True, valid_eq=True, valid_below=dpos or lam > 1.0,
        note="lower for lambda>2, equality at lambda=2, upper for lambda<2 "
             "(delta>0, or delta=0 and 1<lambda<2)"))
    if not dpos and lam <= 1.0:
        out.append(BoundEntry("origin", 0.0, EQUALITY, True, "delta=0 and 0<lambda<=1"))
    return out


def gh_mode_bounds(p: GHParams) -> List[BoundEntry]:
    """Analytic bounds on the GH mode (values include ``mu``).

    For ``beta < 0`` the bounds of the mirrored law are negated and swapped;
    for ``beta = 0`` the single entry ``symmetric`` (= mu) is returned.
    """
    if p.gamma == 0.0:
        raise DomainError("requires gamma > 0 for mode bounds")
    if p.beta == 0.0:
        return [BoundEntry("symmetric", p.mu, EQUALITY, True, "beta=0")]
    if p.beta > 0.0:
        return _shift(_gh_bounds_pos(p), p.mu)
    q = GHParams(p.lam, p.alpha, -p.beta, p.delta)
    return _shift(_flip(_gh_bounds_pos(q)), p.mu)


def _gh_mean_bounds_pos(p: GHParams):
    lam = p.lam
    g = p.gamma
    t = p.beta / (g * g)
    d2 = (p.delta * g) ** 2
    return [
        BoundEntry("mean1.lower", t * _plus_root(lam, d2), LOWER, True, "all lambda"),
        BoundEntry("mean1.upper", t * _plus_root(lam + 1.0, d2), UPPER, True, "all lambda"),
        _oriented("mean2", t * _plus_root(lam + 0.5, d2), lam, -0.5, UPPER,
                  note="upper for lambda>-1/2, equality at -1/2, lower below"),
        _oriented("mean29", t * (1.0 + _plus_root(lam - 0.5, d2)), lam, 0.5, LOWER,
                  note="lower for lambda>1/2, equality at 1/2, upper below"),
    ]


def gh_mean_bounds(p: GHParams) -> List[BoundEntry]:
    """Bounds on the GH mean (values include ``mu``); requires ``delta > 0``."""
    if p.delta <= 0.0:
        raise DomainError("requires delta > 0 for the GH mean bounds")
    if p.gamma == 0.0:
        raise DomainError("requires gamma > 0 for a finite mean")
    if p.beta == 0.0:
        return [BoundEntry("symmetric", p.mu, EQUALITY, True, "beta=0")]
    if p.beta > 0.0:
        return _shift(_gh_mean_bounds_pos(p), p.mu)
    q = GHParams(p.lam, p.alpha, -p.beta, p.delta)
    return _shift(_flip(_gh_mean_bounds_pos(q)), p.mu)


# ---------------------------------------------------------------- VG bounds

def _vg_bounds_pos(p: VGParams):
    r, th, sg = p.r, p.theta, p.sigma
    out = []
    if r <= 2.0:
        out.append(BoundEntry("origin", 0.0, EQUALITY, True, "0<r<=2"))
    pos = r > 2.0
    out.append(BoundEntry("mode1vg.lower", th * (r - 3.0), LOWER, pos, "r>2"))
    out.append(BoundEntry("mode1vg.upper", th * (r - 2.0), UPPER, pos, "r>2"))
    out.append(BoundEntry("positive", 0.0, LOWER, pos, "r>2"))
    rad = (th * th * (r - 2.0) ** 2 + sg * sg * (r - 4.0) ** 2) / (th * th + sg * sg)
    b44 = 0.5 * th * (r - 2.0 + math.sqrt(rad))
    out.append(_oriented("r4r4", b44, r, 4.0, LOWER, valid_below=pos,
                         note="lower for r>4, equality at r=4, upper for 2<r<4"))
    return out


def vg_mode_bounds(p) -> List[BoundEntry]:
    """Analytic bounds on the VG mode (values include ``mu``)."""
    p = as_vg(p)
    if p.theta == 0.0:
        return [BoundEntry("symmetric", p.mu, EQUALITY, True, "theta=0")]
    if p.theta > 0.0:
        return _shift(_vg_bounds_pos(p), p.mu)
    return _shift(_flip(_vg_bounds_pos(VGParams(p.r, -p.theta, p.sigma))), p.mu)


# ------------------------------------------------------------- McKay bounds

def mode5_is_sharper(m, c):
    """Where the mode5mckay lower bound beats the mode1mckay lower bound."""
    if m <= 0.0:
        return False
    if c >= math.sqrt(2.0):
        return True
    return m < c * c / (2.0 * (2.0 - c * c))


def mckay_mode_bounds(p: McKayParams) -> List[BoundEntry]:
    """Analytic bounds on the McKay Type I mode."""
    m, c, phi = p.m, p.c, p.phi
    pos = m > 0.0
    out = []
    if not pos:
        out.append(BoundEntry("origin", 0.0, EQUALITY, True, "-1/2<m<=0"))
    c2 = c * c
    out.append(BoundEntry("mode1mckay.lower", (2.0 * m - 1.0) * phi, LOWER, pos, "m>0"))
    mid = phi * _plus_root(m - 0.5, 2.0 * m * (c - 1.0) * (c + 1.0) / c2)
    out.append(BoundEntry("mode1mckay.mid", mid, UPPER, pos, "m>0"))
    out.append(BoundEntry("mode1mckay.upper", 2.0 * m * phi, UPPER, pos, "m>0"))
    v5 = phi * _plus_root(m - 1.0, 4.0 * (c - 1.0) * (c + 1.0) * m / c2)
    sharper = mode5_is_sharper(m, c)
    out.append(BoundEntry("mode5mckay", v5, LOWER, pos,
                          "m>0; sharper than mode1mckay.lower" if sharper
                          else "m>0; not sharper than mode1mckay.lower here"))
    th = p.b * math.atanh(1.0 / c)
    if m == 0.5:
        out.append(BoundEntry("tanhin", th, EQUALITY, True, "equality at m=1/2"))
    else:
        out.append(BoundEntry("tanhin", th, LOWER, m > 0.5, "m>1/2"))
    return out


# ------------------------------------------------------------- gap bounds

def _gh_gap_pos(p: GHParams):
    lam, alpha = p.lam, p.alpha
    g = p.gamma
    t = p.beta / (g * g)
    d2 = (p.delta * g) ** 2

    def rt(u, w2=d2):
        return math.sqrt(max(u * u + w2, 0.0))

    w29 = g * g * (p.delta ** 2 + (3.0 - 2.0 * lam) / (alpha * alpha))
    return [
        BoundEntry("modemean", 0.0, LOWER, True, "M < E[X], all lambda"),
        BoundEntry("modemean0.lower", t * (0.5 + rt(lam) - rt(lam - 0.5)), LOWER, True,
                   "all lambda"),
        BoundEntry("modemean0.upper", t * (2.5 + rt(lam + 1.0) - rt(lam - 1.5)), UPPER, True,
                   "all lambda"),
        BoundEntry("modemean1", t * (1.5 + rt(lam - 0.5) - rt(lam - 1.0)), LOWER, lam >= 1.0,
                   "lambda>=1"),
        BoundEntry("modemean2.a", t * (2.0 + rt(lam + 0.5) - rt(lam - 1.5)), UPPER,
                   lam >= -0.5, "lambda>=-1/2"),
        BoundEntry("modemean2.b", t * (1.5 + rt(lam + 0.5) - rt(lam - 1.0, w29)), UPPER,
                   lam >= 2.0, "lambda>=2"),
    ]


def _vg_gap_pos(p: VGParams):
    pos = p.r > 2.0
    return [
        BoundEntry("vgmk.lower", 2.0 * p.theta, LOWER, pos, "r>2"),
        BoundEntry("vgmk.upper", 3.0 * p.theta, UPPER, pos, "r>2"),
    ]


def _mckay_gap(p: McKayParams):
    m, c, phi = p.m, p.c, p.phi
    pos = m > 0.0
    inner = phi * (1.5 + m - math.sqrt(max((m + 0.5) ** 2 - 2.0 * m / (c * c), 0.0)))
    return [
        BoundEntry("exmac.lower_outer", phi, LOWER, pos, "m>0"),
        BoundEntry("exmac.lower", inner, LOWER, pos, "m>0"),
        BoundEntry("exmac.upper", 2.0 * phi, UPPER, pos, "m>0"),
    ]


def mean_mode_gap_bounds(p) -> List[BoundEntry]:
    """Bounds on ``E[X] - M`` for GH (delta > 0), VG/VG2 (or GH with delta = 0) and McKay."""
    if isinstance(p, McKayParams):
        return _mckay_gap(p)
    if isinstance(p, GHParams) and p.delta > 0.0:
        if p.gamma == 0.0:
            raise DomainError("requires gamma > 0 for a finite mean")
        if p.beta == 0.0:
            return [BoundEntry("symmetric", 0.0, EQUALITY, True, "beta=0")]
        if p.beta > 0.0:
            return _gh_gap_pos(p)
        return _flip(_gh_gap_pos(GHParams(p.lam, p.alpha, -p.beta, p.delta)))
    v = as_vg(p)
    if v.theta == 0.0:
        return [BoundEntry("symmetric", 0.0, EQUALITY, True, "theta=0")]
    if v.theta > 0.0:
        return _vg_gap_pos(v)
    return _flip(_vg_gap_pos(VGParams(v.r, -v.theta, v.sigma)))


# ------------------------------------------------------------ closed forms

def gh_closed_form_mode(p: GHParams) -> Optional[float]:
    """Closed-form mode for lambda in {1, 2} (shifted coordinates), else None."""
    g = p.gamma
    if p.lam == 1.0:
        return p.beta * p.delta / g
    if p.lam == 2.0:
        return p.beta / (g * g) * (1.0 + math.hypot(p.beta / p.alpha, p.delta * g))
    return None


def vg_closed_form_mode(p: VGParams) -> Optional[float]:
    """Closed-form mode for r in {4, 6} (shifted coordinates, theta > 0), else None."""
    th = p.theta
    if p.r not in (4.0, 6.0) or th == 0.0:
        return None
    # t = theta / sqrt(theta^2 + sigma^2) keeps kappa = (sigma/theta)^2 out of range issues
    t = th / math.hypot(th, p.sigma)
    if p.r == 4.0:
        return th * (1.0 + t)
    return 0.5 * th * (1.0 + t) * (3.0 + (6.0 - 3.0 * t) / (1.0 + math.sqrt(1.0 + t * (6.0 - 3.0 * t))))


def mckay_closed_form_mode(p: McKayParams) -> Optional[float]:
    if p.m == 0.5:
        return p.b * math.atanh(1.0 / p.c)
    return None


# ------------------------------------------------------------------ solver

def _widen(lo, hi):
    lo -= max(1e-12, 1e-9 * abs(lo))
    hi += max(1e-12, 1e-9 * abs(hi))
    return max(lo, 0.0), hi


def _root_find(f, lo, hi, tol):
    lo, hi = _widen(lo, hi)
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, 0, Interval.point(lo), ()
    if fhi == 0.0:
        return hi, 0, Interval.point(hi), ()
    if not (flo < 0.0 < fhi):
        raise BracketError(
            f"mode residual does not change sign on [{lo!r}, {hi!r}] "
            f"(f(lo)={flo:.3g}, f(hi)={fhi:.3g})")
    x, res = brentq(f, lo, hi, xtol=tol, rtol=max(tol, 4.0 * _EPS),
                    maxiter=500, full_output=True)
    it = res.iterations
    if abs(f(x)) > tol:
        # the x-tolerance was met but not the residual one: polish to full precision
        if lo == 0.0 and x < 1e-3 * hi:
            if f(UNDERFLOW_MODE) > 0.0:
                # the sign change sits below anything we can report
                return 0.0, it, Interval(0.0, hi, False, False), (UNDERFLOW_NOTE,)
            # a residual this flat near the origin is solved in log x
            u, res = brentq(lambda u: f(math.exp(u)), math.log(UNDERFLOW_MODE), math.log(hi),
                            xtol=1e-15, rtol=4.0 * _EPS, maxiter=500, full_output=True)
            x = math.exp(u)
        else:
            x, res = brentq(f, lo, hi, xtol=1e-300, rtol=4.0 * _EPS, maxiter=500,
                            full_output=True)
        it += res.iterations
    return x, it, Interval(lo, hi, False, False), ()


def _positive_mode(f, entries, closed, method, tol, cap):
    """Solve on x > 0 given bounds ``entries`` (shifted, positive orientation)."""
    if closed is not None and method == "auto":
        lo, hi = sharpest(entries)
        lo = closed if lo is None else min(lo, closed)
        hi = closed if hi is None else max(hi, closed)
        return closed, f(closed), 0, CLOSED_FORM, Interval(lo, hi, False, False), ()
    lo, hi = sharpest(entries)
    if lo is None:
        lo = 0.0
    if hi is None:
        hi = cap
    x, it, br, notes = _root_find(f, min(lo, hi), max(lo, hi), tol)
    return x, f(x), it, ROOT_FIND, br, notes


def _report(x, res, it, method, bracket, bounds, mu, sign, tol, notes=()):
    if sign < 0:
        x = -x
        bracket = Interval(-bracket.hi, -bracket.lo, bracket.hi_strict, bracket.lo_strict)
    if mu != 0.0:
        x += mu
        bracket = Interval(bracket.lo + mu, bracket.hi + mu, bracket.lo_strict, bracket.hi_strict)
    return ModeReport(x, res, bracket, tuple(bounds), it, method, tol, tuple(notes))


def _check_method(method):
    if method not in ("auto", "root_find"):
        raise DomainError("requires method in {'auto', 'root_find'}")


def gh_mode(p: GHParams, tol=DEFAULT_TOL, method="auto") -> ModeReport:
    """Mode of GH(lambda, alpha, beta, delta, mu).

    Parameters
    ----------
    tol : float
        Absolute x-tolerance of the root finder (relative for |x| > 1).
    method : {'auto', 'root_find'}
        ``'root_find'`` skips the closed forms at lambda = 1, 2.
    """
    _check_method(method)
    if p.gamma == 0.0:
        raise DomainError("requires gamma > 0 for the mode")
    bounds = gh_mode_bounds(p)
    if p.beta == 0.0:
        return ModeReport(p.mu, 0.0, Interval.point(p.mu), tuple(bounds), 0, AT_ORIGIN, tol)
    sign = 1 if p.beta > 0.0 else -1
    q = GHParams(p.lam, p.alpha, abs(p.beta), p.delta)
    if q.delta == 0.0 and q.lam <= 1.0:
        return ModeReport(p.mu, 0.0, Interval.point(p.mu), tuple(bounds), 0, AT_ORIGIN, tol,
                          ("delta=0 and 0<lambda<=1",))
    pos = _gh_bounds_pos(q)
    f = lambda x: gh_mode_residual(q, x)
    cap = None
    if sharpest(pos)[1] is None:
        cap = (_gh_mean_bounds_pos(q)[1].value if q.delta > 0.0
               else vg_mean(as_vg(q)))
    x, res, it, meth, br, notes = _positive_mode(f, pos, gh_closed_form_mode(q), method, tol, cap)
    return _report(x, res, it, meth, br, bounds, p.mu, sign, tol, notes)


def vg_mode(p, tol=DEFAULT_TOL, method="auto") -> ModeReport:
    """Mode of VG(r, theta, sigma, mu); VG2 records are converted first."""
    _check_method(method)
    p = as_vg(p)
    bounds = vg_mode_bounds(p)
    if p.theta == 0.0 or p.r <= 2.0:
        why = "theta=0" if p.theta == 0.0 else "0<r<=2"
        return ModeReport(p.mu, 0.0, Interval.point(p.mu), tuple(bounds), 0, AT_ORIGIN, tol, (why,))
    sign = 1 if p.theta > 0.0 else -1
    q = VGParams(p.r, abs(p.theta), p.sigma)
    pos = _vg_bounds_pos(q)
    f = lambda x: vg_mode_residual(q, x)
    x, res, it, meth, br, notes = _positive_mode(f, pos, vg_closed_form_mode(q), method, tol,
                                          q.r * q.theta)
    return _report(x, res, it, meth, br, bounds, p.mu, sign, tol, notes)


def vg2_mode(p: VG2Params, tol=DEFAULT_TOL, method="auto") -> ModeReport:
    return vg_mode(convert_vg2_to_vg(p), tol, method)


def mckay_mode(p: McKayParams, tol=DEFAULT_TOL, method="auto") -> ModeReport:
    """Mode of McKay Type I(m, b, c)."""
    _check_method(method)
    bounds = mckay_mode_bounds(p)
    if p.m <= 0.0:
        return ModeReport(0.0, 0.0, Interval.point(0.0), tuple(bounds), 0, AT_ORIGIN, tol,
                          ("-1/2<m<=0",))
    f = lambda x: mckay_mode_residual(p, x)
    x, res, it, meth, br, notes = _positive_mode(f, bounds, mckay_closed_form_mode(p), method, tol,
                                          mckay_mean(p))
    return _report(x, res, it, meth, br, bounds, 0.0, 1, tol, notes)


def mode(dist, tol=DEFAULT_TOL, method="auto") -> ModeReport:
    """Dispatch on the record type."""
    if isinstance(dist, GHParams):
        if dist.delta == 0.0:
            rep = vg_mode(as_vg(dist), tol, method)
            return ModeReport(rep.mode, rep.residual, rep.bracket, tuple(gh_mode_bounds(dist)),
                              rep.iterations, rep.method, tol, rep.notes)
        return gh_mode(dist, tol, method)
    if isinstance(dist, (VGParams, VG2Params)):
        return vg_mode(dist, tol, method)
    if isinstance(dist, McKayParams):
        return mckay_mode(dist, tol, method)
    raise DomainError(f"mode is not provided for {type(dist).__name__}")


def mode_bounds(dist) -> List[BoundEntry]:
    if isinstance(dist, GHParams):
        return gh_mode_bounds(dist)
    if isinstance(dist, (VGParams, VG2Params)):
        return vg_mode_bounds(dist)
    if isinstance(dist, McKayParams):
        return mckay_mode_bounds(dist)
    raise DomainError(f"mode bounds are not provided for {type(dist).__name__}")


# --------------------------------------------------- product of normals

def product_vg_params(n, sigma_x, sigma_y, rho) -> VGParams:
    """VG law of the mean of n products of correlated zero-mean normals."""
    if int(n) != n or n < 1:
        raise DomainError("requires a positive integer n")
    if not (sigma_x > 0.0 and sigma_y > 0.0):
        raise DomainError("requires sigma_x > 0 and sigma_y > 0")
    if not -1.0 < rho < 1.0:
        raise DomainError("requires -1 < rho < 1")
    sxy = sigma_x * sigma_y
    return VGParams(float(n), rho * sxy / n, sxy * math.sqrt(1.0 - rho * rho) / n)


def product_mean_mode_bounds(n, sigma_x, sigma_y, rho):
    """Bounds on the mode of the product sample mean, and its :class:`ModeReport`."""
    vg = product_vg_params(n, sigma_x, sigma_y, rho)
    rep = vg_mode(vg)
    n = float(n)
    a = abs(rho) * sigma_x * sigma_y
    if rho == 0.0:
        return [BoundEntry("symmetric", 0.0, EQUALITY, True, "rho=0")], rep
    out = []
    if n <= 2.0:
        out.append(BoundEntry("origin", 0.0, EQUALITY, True, "n=1,2"))
    out.append(BoundEntry("product.lower", a * (1.0 - 3.0 / n), LOWER, n >= 3.0, "n>=3"))
    out.append(BoundEntry("product.upper", a * (1.0 - 2.0 / n), UPPER, n >= 3.0, "n>=3"))
    ref = 0.5 * a * (1.0 - 2.0 / n + math.sqrt(rho * rho * (1.0 - 2.0 / n) ** 2
                                               + (1.0 - rho * rho) * (1.0 - 4.0 / n) ** 2))
    if n == 4.0:
        out.append(BoundEntry("product.refined", ref, EQUALITY, True, "equality iff n=4"))
    else:
        out.append(BoundEntry("product.refined", ref, LOWER, n > 4.0, "n>=4"))
    if rho < 0.0:
        out = _flip(out)
    return out, rep


# -------------------------------------------------------------- asymptotes

def gh_mode_asymptote(p: GHParams, regime: str) -> Optional[float]:
    """Leading-order mode as sigma = 1/gamma -> inf (``'sigma_large'``) or -> 0
    (``'sigma_small'``) with theta = beta/gamma^2 fixed; None when no branch applies.
    """
    lam, delta = p.lam, p.delta
    g = p.gamma
    if g == 0.0:
        raise DomainError("requires gamma > 0")
    th, sg = p.beta / (g * g), 1.0 / g
    if regime == "sigma_large":
        if lam > 1.5:
            v = th * (2.0 * lam - 3.0)
        elif lam == 1.5:
            v = th / math.log(sg) if sg > 1.0 else None
        elif delta == 0.0:
            v = 0.0 if lam <= 1.0 else None
        elif lam > 0.5:
            v = (2.0 ** (2.0 * lam - 2.0) * math.gamma(lam - 0.5) / math.gamma(1.5 - lam)
                 * th * (delta / sg) ** (3.0 - 2.0 * lam))
        elif lam < 0.5:
            v = th * delta * delta / ((1.0 - 2.0 * lam) * sg * sg)
        else:
            v = None
    elif regime == "sigma_small":
        if delta != 0.0:
            v = None
        elif lam > 1.0:
            v = 2.0 * th * (lam - 1.0)
        else:
            v = 0.0
    else:
        raise DomainError("requires regime in {'sigma_large', 'sigma_small'}")
    return None if v is None else v + p.mu


# ---------------------------------------------------------- brute force

def brute_force_mode(log_density: Callable[[float], float], search: Interval,
                     grid: int = 2001, xtol: float = 1e-10) -> float:
    """Mode of a unimodal density by grid scan and slope bisection.

    Uses only ``log_density``; the stationarity equations are never touched.

    Raises
    ------
    DomainError
        If the grid maximum sits on the boundary of ``search``.
    """
    lo, hi = float(search.lo), float(search.hi)
    xs = np.linspace(lo, hi, int(grid))
    vals = np.array([log_density(x) for x in xs])
    k = int(np.nanargmax(vals))
    if k == 0 or k == len(xs) - 1:
        raise DomainError("maximum at the boundary of the search interval")
    a, b = xs[k - 1], xs[k + 1]
    h = max(1e-6 * (hi - lo), 1e-12 * max(1.0, abs(xs[k])))

    def slope(x):
        return log_density(x + h) - log_density(x - h)

    # golden-section down to a width where the slope sign is still reliable
    gr = 0.5 * (math.sqrt(5.0) - 1.0)
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = log_density(c), log_density(d)
    while b - a > 1e3 * h:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = log_density(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = log_density(d)
    while b - a > max(xtol, 4.0 * _EPS * max(1.0, abs(a))):
        m = 0.5 * (a + b)
        s = slope(m)
        if s > 0.0:
            a = m
        elif s < 0.0:
            b = m
        else:
            return m
    return 0.5 * (a + b)


__all__ = [
    "ModeReport", "CLOSED_FORM", "ROOT_FIND", "AT_ORIGIN",
    "gh_mode", "vg_mode", "vg2_mode", "mckay_mode", "mode", "mode_bounds",
    "gh_mode_bounds", "vg_mode_bounds", "mckay_mode_bounds", "gh_mean_bounds",
    "mean_mode_gap_bounds", "product_mean_mode_bounds", "product_vg_params",
    "gh_mode_asymptote", "gh_from_theta_sigma", "brute_force_mode",
    "gh_mode_residual", "vg_mode_residual", "mckay_mode_residual", "sharpest",
    "mode5_is_sharper", "gh_closed_form_mode", "vg_closed_form_mode",
    "mckay_closed_form_mode",
]
