"""Adaptive Gauss-Kronrod integration of the family densities.

The driver is a global adaptive scheme: the panel with the largest error
estimate is bisected until the summed estimate meets the tolerance. Panel
sums come from ``kernel.gk15``, which works in a variable ``t`` with
``x = x0 + sign(t)|t|**power``. Choosing ``power`` per family turns the
power-law singularity at ``x0`` (VG with r < 1, McKay with m < 0, gamma
with r < 1) into a bounded integrand.

Tails are cut where the remaining mass is below ``tail_eps``:

* VG, McKay and gamma use their gamma representations, e.g.
  ``P(s1 X1 - s2 X2 > t) <= P(s1 X1 > t)``, and invert the regularized
  upper incomplete gamma function, so the cutoffs are rigorous.
* GH marches outward until the density, divided by its exponential decay
  rate ``alpha -+ beta`` (less the power-law term), drops below ``tail_eps``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from scipy.special import gammainccinv

from ._backend import KIND_GAMMA, KIND_GH, KIND_MCKAY, KIND_VG, kernel
from .distributions import (as_vg, kernel_spec, mckay_as_gamma_sum, mean,
                            vg_as_gamma_difference)
from .errors import DomainError, QuadratureError

DEFAULT_LIMIT = 4000
N_INITIAL = 12


@dataclass(frozen=True)
class Support:
    """Everything the integrator needs for one distribution (location removed)."""

    kind: int
    params: tuple
    loc: float
    x0: float        # point the power map is centred on
    power: float
    lo: float        # truncated support, shifted coordinates
    hi: float
    center: float
    tail_eps: float

    def to_t(self, x):
        d = x - self.x0
        if self.power == 1.0:
            return d
        return math.copysign(abs(d) ** (1.0 / self.power), d)

    def to_x(self, t):
        if self.power == 1.0:
            return self.x0 + t
        return self.x0 + math.copysign(abs(t) ** self.power, t)

    def log_density(self, x):
        return kernel.log_density(self.kind, self.params, x)

    def jac_density(self, t):
        """Integrand in t: density times dx/dt."""
        if self.power == 1.0:
            return math.exp(self.log_density(self.x0 + t))
        at = abs(t)
        if at == 0.0:
            return math.inf if self.power < 1.0 else 0.0
        x = self.to_x(t)
        return math.exp(self.log_density(x) + math.log(self.power)
                        + (self.power - 1.0) * math.log(at))


def _qinv(shape, eps):
    return float(gammainccinv(shape, eps))


def _gh_tail(ks, center, eps, side):
    lam, alpha, beta, delta = ks.params[0], ks.params[1], ks.params[2], ks.params[3]
    kappa = alpha - beta if side > 0 else alpha + beta
    if kappa <= 0.0:
        raise DomainError("requires gamma > 0 for CDF evaluation")
    grow = max(lam - 1.0, 0.0)
    step = max(1.0 / kappa, delta, 1e-3 * abs(center), 1e-300)
    x = max(side * center, 0.0) + step
    for _ in range(400):
        d = kappa - grow / x
        if d > 0.5 * kappa:
            lp = kernel.log_density(ks.kind, ks.params, side * x)
            if lp - math.log(d) < math.log(eps):
                return side * x
        x += step
        step *= 1.5
    raise QuadratureError("could not locate the GH tail cutoff")


def prepare(dist, tol) -> Support:
    """Build the integration description of ``dist`` for absolute tolerance ``tol``."""
    eps = max(tol / 100.0, 1e-300)
    ks = kernel_spec(dist)
    if ks.kind == KIND_GH:
        center = mean(dist) - ks.loc
        lo = _gh_tail(ks, center, eps, -1)
        hi = _gh_tail(ks, center, eps, +1)
        return Support(ks.kind, ks.params, ks.loc, 0.0, 1.0, lo, hi, center, eps)
    if ks.kind == KIND_VG:
        vg = as_vg(dist)
        s1, s2, shape = vg_as_gamma_difference(vg)
        q = _qinv(shape, eps)
        r = vg.r
        power = 1.0 / r if r < 1.0 else (2.0 if r == 1.0 else 1.0)
        return Support(ks.kind, ks.params, ks.loc, 0.0, power, -s2 * q, s1 * q,
                       r * vg.theta, eps)
    if ks.kind == KIND_MCKAY:
        s1, s2, shape = mckay_as_gamma_sum(dist)
        hi = s2 * _qinv(2.0 * shape, eps)
        power = 1.0 / (2.0 * dist.m + 1.0) if dist.m < 0.0 else 1.0
        return Support(ks.kind, ks.params, 0.0, 0.0, power, 0.0, hi, mean(dist), eps)
    if ks.kind == KIND_GAMMA:
        hi = _qinv(dist.r, eps) / dist.lam
        power = 1.0 / dist.r if dist.r < 1.0 else 1.0
        return Support(ks.kind, ks.params, 0.0, 0.0, power, 0.0, hi, mean(dist), eps)
    raise DomainError("unsupported distribution")


def _gk(sup, ta, tb):
    return kernel.gk15(sup.kind, sup.params, sup.x0, sup.power, ta, tb)


def integrate_t(sup, t_points, tol, limit=DEFAULT_LIMIT):
    """Integrate the t-space integrand over consecutive ``t_points`` panels.

    Returns ``(value, error_estimate, n_panels)``.
    """
    heap = []
    total = 0.0
    err = 0.0
    for ta, tb in zip(t_points[:-1], t_points[1:]):
        if tb <= ta:
            continue
        v, e = _gk(sup, ta, tb)
        total += v
        err += e
        heapq.heappush(heap, (-e, ta, tb, v))
    n = len(heap)
    while err > tol and heap:
        if n >= limit:
            raise QuadratureError(
                f"quadrature budget of {limit} panels exhausted (error {err:.3g} > {tol:.3g})",
                achieved=err)
        neg_e, ta, tb, v = heapq.heappop(heap)
        tm = 0.5 * (ta + tb)
        if not ta < tm < tb:
            # panel at floating-point resolution; accept its estimate
            heapq.heappush(heap, (0.0, ta, tb, v))
            err += neg_e
            continue
        v1, e1 = _gk(sup, ta, tm)
        v2, e2 = _gk(sup, tm, tb)
        total += v1 + v2 - v
        err += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, ta, tm, v1))
        heapq.heappush(heap, (-e2, tm, tb, v2))
        n += 1
    # recompute the sums once to drop accumulated cancellation
    total = math.fsum(item[3] for item in heap)
    err = math.fsum(-item[0] for item in heap)
    return total, err, n


def integrate(sup, a, b, tol):
    """Integral of the density over ``[a, b]`` in shifted coordinates.

    Returns ``(value, error_estimate)``.
    """
    if b < a:
        v, e = integrate(sup, b, a, tol)
        return -v, e
    a = max(a, sup.lo)
    b = min(b, sup.hi)
    if b <= a:
        return 0.0, 0.0
    pts = {a, b}
    for p in (sup.x0, sup.center):
        if a < p < b:
            pts.add(p)
    if sup.kind == KIND_GH:
        delta = sup.params[3]
        for p in (-delta, delta):
            if a < p < b:
                pts.add(p)
    width = (sup.hi - sup.lo) / N_INITIAL
    k = math.floor((a - sup.lo) / width) + 1
    while True:
        p = sup.lo + k * width
        if p >= b:
            break
        pts.add(p)
        k += 1
    ts = sorted(sup.to_t(p) for p in pts)
    v, e, _ = integrate_t(sup, ts, tol)
    return v, e


def cdf_shifted(sup, u, tol):
    """P(X - loc <= u) and an error bound, integrating the shorter side."""
    if u <= sup.lo:
        return 0.0, sup.tail_eps
    if u >= sup.hi:
        return 1.0, sup.tail_eps
    qtol = 0.5 * tol
    if u <= sup.center:
        v, e = integrate(sup, sup.lo, u, qtol)
        val = v
    else:
        v, e = integrate(sup, u, sup.hi, qtol)
        val = 1.0 - v
    return min(max(val, 0.0), 1.0), e + sup.tail_eps


__all__ = ["Support", "prepare", "integrate", "integrate_t", "cdf_shifted"]
