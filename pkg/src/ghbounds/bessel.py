"""Modified Bessel functions I and K, adjacent-order ratios and ratio bounds.

Evaluation is done in the compiled (or pure-Python) kernel selected by
:mod:`ghbounds._backend`. Values are computed in log space with the
exponential factor removed, so ratios never form 0/0 or inf/inf.

Regime constants (see ``_pykernels``): Temme's series for ``x <= 2``,
Steed's continued fraction above, Hankel expansion for I when
``x >= max(30, nu**2 / 2)``. Relative accuracy against a 40-digit mpmath
table is about 1e-13 on ``nu in [-1, 50]``, ``x in (0, 700]``.
"""

from __future__ import annotations

import math
from typing import List, NamedTuple

from ._backend import kernel
from .errors import BesselRangeError, DomainError
from .intervals import EQUALITY, LOWER, TWO_SIDED, UPPER, Interval

__all__ = [
    "bessel_i", "bessel_k", "log_bessel_i", "log_bessel_k", "half_integer_k",
    "ratio_k", "ratio_i", "ratio_k_bounds", "ratio_i_bounds",
    "RatioBound", "Interval",
]

_LOG_MAX = math.log(1.7976931348623157e308)
_LOG_TINY = math.log(5e-324)


def _check_order(nu):
    nu = float(nu)
    if not math.isfinite(nu):
        raise DomainError("requires a finite order nu")
    return nu


def _check_arg(x):
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError("requires x > 0")
    return x


def _check_i_order(nu):
    nu = _check_order(nu)
    if nu < -1.0:
        raise DomainError("requires nu >= -1")
    return nu


def _exp_checked(logv, what):
    if logv > _LOG_MAX:
        raise BesselRangeError(f"{what} overflows (log value {logv:.6g}); use scaled=True")
    if logv < _LOG_TINY:
        raise BesselRangeError(f"{what} underflows (log value {logv:.6g}); use scaled=True")
    return math.exp(logv)


def log_bessel_k(nu, x, scaled=False):
    """log K_nu(x), or log(e^x K_nu(x)) when ``scaled``."""
    nu, x = _check_order(nu), _check_arg(x)
    v = kernel.log_kve(nu, x)
    return v if scaled else v - x


def log_bessel_i(nu, x, scaled=False):
    """log I_nu(x), or log(e^-x I_nu(x)) when ``scaled``; requires nu >= -1."""
    nu, x = _check_i_order(nu), _check_arg(x)
    v = kernel.log_ive(nu, x)
    return v if scaled else v + x


def bessel_k(nu, x, scaled=False):
    """Modified Bessel function of the second kind.

    Parameters
    ----------
    nu : float
        Order, any real. ``K_{-nu} = K_nu`` holds exactly.
    x : float
        Argument, ``x > 0``.
    scaled : bool
        Return ``exp(x) * K_nu(x)`` instead.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    BesselRangeError
        If the unscaled value is not representable.
    """
    nu, x = _check_order(nu), _check_arg(x)
    v = kernel.log_kve(nu, x)
    if scaled:
        return _exp_checked(v, f"exp(x) K_{nu}({x})")
    return _exp_checked(v - x, f"K_{nu}({x})")


def bessel_i(nu, x, scaled=False):
    """Modified Bessel function of the first kind, ``nu >= -1``.

    Parameters
    ----------
    nu : float
        Order, ``nu >= -1`` (the range where I_nu is positive on x > 0).
    x : float
        Argument, ``x > 0``.
    scaled : bool
        Return ``exp(-x) * I_nu(x)`` instead.
    """
    nu, x = _check_i_order(nu), _check_arg(x)
    v = kernel.log_ive(nu, x)
    if scaled:
        return _exp_checked(v, f"exp(-x) I_{nu}({x})")
    return _exp_checked(v + x, f"I_{nu}({x})")


def half_integer_k(n, x):
    """K_{n+1/2}(x) from its terminating finite sum.

    ``K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_k (n+k)! / ((n-k)! k! (2x)^k)``.
    Used as an independent check of :func:`bessel_k` at half-integer order.
    """
    if int(n) != n or n < 0:
        raise DomainError("requires a non-negative integer n")
    n = int(n)
    x = _check_arg(x)
    total = 0.0
    for k in range(n + 1):
        total += math.factorial(n + k) / (math.factorial(n - k) * math.factorial(k)) / (2.0 * x) ** k
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def ratio_k(nu, x):
    """K_{nu-1}(x) / K_nu(x) via the reduced-order ratio and forward recurrence."""
    return kernel.kratio(_check_order(nu), _check_arg(x))


def ratio_i(nu, x):
    """I_nu(x) / I_{nu-1}(x) via the Gauss continued fraction (Hankel for large x).

    Positive for ``nu >= 0``; ``nu`` must exceed -1.
    """
    nu, x = _check_order(nu), _check_arg(x)
    if nu <= -1.0:
        raise DomainError("requires nu > -1")
    return kernel.iratio(nu, x)


class RatioBound(NamedTuple):
    """A tagged bound on a Bessel ratio.

    ``interval`` is the set the ratio is asserted to lie in (one-sided bounds
    use an infinite end; equality cases are a single point). ``valid`` is
    false where the inequality is not asserted, in which case ``interval``
    is reported for information only.
    """

    name: str
    interval: Interval
    kind: str
    valid: bool
    note: str

    @property
    def value(self):
        if self.kind == UPPER:
            return self.interval.hi
        return self.interval.lo


def _quot(x, a, b, b_minus_a, b_plus_a):
    """``x / (a + sqrt(b^2 + x^2))`` without cancellation when ``a < 0``.

    ``b - a`` and ``b + a`` are passed in exact form so that ``b^2 - a^2``
    never comes from subtracting rounded, nearly equal quantities.
    """
    root = math.sqrt(b * b + x * x)
    if a >= 0.0:
        return x / (a + root)
    return x * (root - a) / (b_minus_a * b_plus_a + x * x)


def _oriented(name, value, nu, pivot, lower_above, note):
    """Bound that is lower (or upper) for nu > pivot, equality at pivot, reversed below."""
    if nu == pivot:
        return RatioBound(name, Interval.point(value), EQUALITY, True, note)
    above = nu > pivot
    is_lower = above if lower_above else not above
    if is_lower:
        return RatioBound(name, Interval.above(value), LOWER, True, note)
    return RatioBound(name, Interval.below(value), UPPER, True, note)


def ratio_k_bounds(nu, x) -> List[RatioBound]:
    """All implemented bounds on K_{nu-1}(x)/K_nu(x).

    Returns three entries: ``seg1`` (two-sided, every nu), ``seg2``
    (lower for nu > 1/2, exact at 1/2, upper below) and ``seg3`` (upper for
    nu > 3/2, exact at 3/2, lower below).
    """
    nu, x = _check_order(nu), _check_arg(x)
    lo = _quot(x, nu, nu, 0.0, 2.0 * nu)
    hi = _quot(x, nu - 1.0, nu - 1.0, 0.0, 0.0)
    out = [RatioBound("seg1", Interval(lo, hi), TWO_SIDED, True, "all real nu")]
    v2 = _quot(x, nu - 0.5, nu - 0.5, 0.0, 0.0)
    out.append(_oriented("seg2", v2, nu, 0.5, True,
                         "lower for nu>1/2, equality at nu=1/2, upper for nu<1/2"))
    v3 = _quot(x, nu - 0.5, nu - 1.5, -1.0, 2.0 * nu - 2.0)
    out.append(_oriented("seg3", v3, nu, 1.5, False,
                         "upper for nu>3/2, equality at nu=3/2, lower for nu<3/2"))
    return out


def segi2_is_sharper(nu, x):
    """True where the segi2 upper bound beats the sqrtbb upper bound."""
    return nu >= 0.0 and 0.0 < x < 2.0 * math.sqrt(nu * (2.0 * nu + 1.0))


def ratio_i_bounds(nu, x) -> List[RatioBound]:
    """All implemented bounds on I_nu(x)/I_{nu-1}(x).

    Entries: ``sqrtbb.lower`` (nu >= 0), ``sqrtbb.upper`` (nu >= 1/2),
    ``segi2`` (upper, nu >= 0; its note says whether it is the sharper upper
    bound) and ``tanh`` (upper for nu > 1/2, exact at nu = 1/2).
    """
    nu, x = _check_order(nu), _check_arg(x)
    lo = _quot(x, nu - 0.5, nu + 0.5, 1.0, 2.0 * nu)
    hi = _quot(x, nu - 0.5, nu - 0.5, 0.0, 0.0)
    s2 = _quot(x, nu - 1.0, nu + 1.0, 2.0, 2.0 * nu)
    sharper = segi2_is_sharper(nu, x)
    out = [
        RatioBound("sqrtbb.lower", Interval.above(lo), LOWER, nu >= 0.0, "nu>=0"),
        RatioBound("sqrtbb.upper", Interval.below(hi), UPPER, nu >= 0.5, "nu>=1/2"),
        RatioBound("segi2", Interval.below(s2), UPPER, nu >= 0.0,
                   "nu>=0; sharper than sqrtbb.upper" if sharper
                   else "nu>=0; not sharper than sqrtbb.upper here"),
    ]
    t = math.tanh(x)
    if nu == 0.5:
        out.append(RatioBound("tanh", Interval.point(t), EQUALITY, True, "equality at nu=1/2"))
    else:
        out.append(RatioBound("tanh", Interval.below(t), UPPER, nu > 0.5, "nu>1/2"))
    return out
