"""Parameter records, densities, means and gamma representations.

Families
--------
``GHParams``     generalized hyperbolic (lambda, alpha, beta, delta, mu)
``VGParams``     variance-gamma in the (r, theta, sigma, mu) form
``VG2Params``    variance-gamma in the (lambda, alpha, beta, mu) form
``McKayParams``  McKay Type I (m, b, c) on x > 0
``GammaParams``  gamma with shape r and rate lam

Records are immutable and validated on construction, so invalid parameters
never reach the numerics. Every density is evaluated at location 0 and
shifted by ``mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple, Union

import numpy as np

from ._backend import KIND_GAMMA, KIND_GH, KIND_MCKAY, KIND_VG, kernel
from .errors import DomainError

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_SQRT_PI = 0.5 * math.log(math.pi)


def _real(name, value):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"requires a real number for {name}") from None
    if not math.isfinite(v):
        raise DomainError(f"requires a finite {name}")
    return v


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


class KernelSpec(NamedTuple):
    """What the numerical kernel needs: density kind, packed params, location."""

    kind: int
    params: tuple
    loc: float


@dataclass(frozen=True)
class GHParams:
    """Generalized hyperbolic parameters.

    The accepted domain is exactly the union of
    ``delta >= 0, gamma > 0, lam > 0``; ``delta > 0, gamma > 0, lam = 0``;
    ``delta > 0, gamma >= 0, lam < 0`` where ``gamma = sqrt(alpha^2 - beta^2)``.
    """

    lam: float
    alpha: float
    beta: float
    delta: float
    mu: float = 0.0

    family = "gh"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _real(f.name, getattr(self, f.name)))
        lam, alpha, beta, delta = self.lam, self.alpha, self.beta, self.delta
        _require(alpha > 0.0, "requires alpha > 0")
        _require(delta >= 0.0, "requires delta >= 0")
        _require(abs(beta) <= alpha, "requires |beta| <= alpha")
        g = self.gamma
        if lam > 0.0:
            _require(g > 0.0, "requires |beta| < alpha when lambda > 0")
        elif lam == 0.0:
            _require(delta > 0.0, "requires delta > 0 when lambda = 0")
            _require(g > 0.0, "requires |beta| < alpha when lambda = 0")
        else:
            _require(delta > 0.0, "requires delta > 0 when lambda < 0")

    @property
    def gamma(self):
        return math.sqrt((self.alpha - self.beta) * (self.alpha + self.beta))

    @property
    def sigma(self):
        g = self.gamma
        return math.inf if g == 0.0 else 1.0 / g

    @property
    def theta(self):
        g = self.gamma
        return math.copysign(math.inf, self.beta) if g == 0.0 else self.beta / (g * g)

    def reflected(self):
        return GHParams(self.lam, self.alpha, -self.beta, self.delta, -self.mu)

    def as_vg2(self):
        """The delta = 0 member of the family as a VG2 record."""
        _require(self.delta == 0.0, "requires delta = 0 for the VG limit")
        return VG2Params(self.lam, self.alpha, self.beta, self.mu)


@dataclass(frozen=True)
class VGParams:
    """Variance-gamma, ``r > 0``, ``sigma > 0``; ``kappa = sigma^2/theta^2``."""

    r: float
    theta: float
    sigma: float
    mu: float = 0.0

    family = "vg"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _real(f.name, getattr(self, f.name)))
        _require(self.r > 0.0, "requires r > 0")
        _require(self.sigma > 0.0, "requires sigma > 0")

    @property
    def kappa(self):
        return math.inf if self.theta == 0.0 else (self.sigma / self.theta) ** 2

    @property
    def s(self):
        """sqrt(theta^2 + sigma^2)."""
        return math.hypot(self.theta, self.sigma)

    def reflected(self):
        return VGParams(self.r, -self.theta, self.sigma, -self.mu)


@dataclass(frozen=True)
class VG2Params:
    """Variance-gamma as the delta -> 0 limit of GH: ``lam > 0``, ``|beta| < alpha``."""

    lam: float
    alpha: float
    beta: float
    mu: float = 0.0

    family = "vg2"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _real(f.name, getattr(self, f.name)))
        _require(self.lam > 0.0, "requires lambda > 0")
        _require(self.alpha > 0.0, "requires alpha > 0")
        _require(abs(self.beta) < self.alpha, "requires |beta| < alpha")

    @property
    def gamma(self):
        return math.sqrt((self.alpha - self.beta) * (self.alpha + self.beta))


@dataclass(frozen=True)
class McKayParams:
    """McKay Type I, ``m > -1/2``, ``b > 0``, ``c > 1``; natural scale ``phi = bc/(c^2-1)``."""

    m: float
    b: float
    c: float

    family = "mckay"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _real(f.name, getattr(self, f.name)))
        _require(self.m > -0.5, "requires m > -1/2")
        _require(self.b > 0.0, "requires b > 0")
        _require(self.c > 1.0, "requires c > 1")

    @classmethod
    def from_phi(cls, m, c, phi=1.0):
        """Record with the given ``phi`` (so ``b = phi (c^2 - 1) / c``)."""
        c = _real("c", c)
        _require(c > 1.0, "requires c > 1")
        _require(phi > 0.0, "requires phi > 0")
        return cls(m, phi * (c - 1.0) * (c + 1.0) / c, c)

    @property
    def phi(self):
        return self.b * self.c / ((self.c - 1.0) * (self.c + 1.0))


@dataclass(frozen=True)
class GammaParams:
    """Gamma with shape ``r > 0`` and rate ``lam > 0``."""

    r: float
    lam: float

    family = "gamma"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _real(f.name, getattr(self, f.name)))
        _require(self.r > 0.0, "requires shape r > 0")
        _require(self.lam > 0.0, "requires rate lam > 0")


Distribution = Union[GHParams, VGParams, VG2Params, McKayParams, GammaParams]


# ---------------------------------------------------------------- conversions

def convert_vg2_to_vg(p: VG2Params) -> VGParams:
    """``r = 2 lam``, ``theta = beta/gamma^2``, ``sigma = 1/gamma``."""
    g = p.gamma
    return VGParams(2.0 * p.lam, p.beta / (g * g), 1.0 / g, p.mu)


def convert_vg_to_vg2(p: VGParams) -> VG2Params:
    """Inverse of :func:`convert_vg2_to_vg`."""
    g = 1.0 / p.sigma
    beta = p.theta * g * g
    return VG2Params(0.5 * p.r, math.hypot(g, beta), beta, p.mu)


def as_vg(p) -> VGParams:
    """VG record for a VG, VG2 or delta = 0 GH record."""
    if isinstance(p, VGParams):
        return p
    if isinstance(p, VG2Params):
        return convert_vg2_to_vg(p)
    if isinstance(p, GHParams):
        return convert_vg2_to_vg(p.as_vg2())
    raise DomainError(f"requires a VG-type record, got {type(p).__name__}")


# ------------------------------------------------------------ kernel packing

def _gh_kernel(p: GHParams):
    lam, alpha, delta = p.lam, p.alpha, p.delta
    g = p.gamma
    if g > 0.0:
        z = delta * g
        lognorm = (lam * math.log(g / delta) - LOG_SQRT_2PI
                   - (kernel.log_kve(lam, z) - z) - (lam - 0.5) * math.log(alpha))
    else:
        # gamma -> 0 with lam < 0: K_lam(z) ~ Gamma(-lam) 2^(-lam-1) z^lam
        lognorm = (-2.0 * lam * math.log(delta) + (lam + 1.0) * math.log(2.0)
                   - math.lgamma(-lam) - LOG_SQRT_2PI - (lam - 0.5) * math.log(alpha))
    return (lam, alpha, p.beta, delta, lognorm, 0.0)


def _vg_kernel(p: VGParams):
    r, theta, sigma = p.r, p.theta, p.sigma
    s = p.s
    nu = 0.5 * (r - 1.0)
    s2 = sigma * sigma
    lognorm = (-math.log(sigma) - LOG_SQRT_PI - math.lgamma(0.5 * r)
               - nu * math.log(2.0 * s))
    # exponential decay rates (s -+ theta)/sigma^2 written without cancellation
    if theta >= 0.0:
        rate_r, rate_l = 1.0 / (s + theta), (s + theta) / s2
    else:
        rate_r, rate_l = (s - theta) / s2, 1.0 / (s - theta)
    if nu > 0.0:
        log0 = (lognorm + math.lgamma(nu) + (nu - 1.0) * math.log(2.0)
                + nu * math.log(s2 / s))
    else:
        log0 = math.inf
    return (nu, s / s2, lognorm, rate_l, rate_r, log0)


def _mckay_kernel(p: McKayParams):
    m, b, c = p.m, p.b, p.c
    lognorm = (LOG_SQRT_PI + (m + 0.5) * math.log((c - 1.0) * (c + 1.0))
               - m * math.log(2.0) - (m + 1.0) * math.log(b) - math.lgamma(m + 0.5))
    return (m, b, c - 1.0, lognorm)


def _gamma_kernel(p: GammaParams):
    return (p.r, p.lam, p.r * math.log(p.lam) - math.lgamma(p.r))


def kernel_spec(dist) -> KernelSpec:
    """Packed kernel description for any family record."""
    if isinstance(dist, GHParams):
        if dist.delta == 0.0:
            return kernel_spec(as_vg(dist))
        return KernelSpec(KIND_GH, _gh_kernel(dist), dist.mu)
    if isinstance(dist, VG2Params):
        return kernel_spec(convert_vg2_to_vg(dist))
    if isinstance(dist, VGParams):
        return KernelSpec(KIND_VG, _vg_kernel(dist), dist.mu)
    if isinstance(dist, McKayParams):
        return KernelSpec(KIND_MCKAY, _mckay_kernel(dist), 0.0)
    if isinstance(dist, GammaParams):
        return KernelSpec(KIND_GAMMA, _gamma_kernel(dist), 0.0)
    raise DomainError(f"unsupported distribution record {type(dist).__name__}")


# ------------------------------------------------------------------ densities

def _eval(dist, x):
    ks = kernel_spec(dist)
    return kernel.log_density(ks.kind, ks.params, float(x) - ks.loc)


def gh_log_pdf(p: GHParams, x) -> float:
    """Log-density of GH; ``delta = 0`` uses the VG limit."""
    return _eval(p, x)


def vg_log_pdf(p: VGParams, x) -> float:
    """Log-density of VG(r, theta, sigma, mu); ``+inf`` at ``x = mu`` when r <= 1."""
    return _eval(p, x)


def vg2_log_pdf(p: VG2Params, x) -> float:
    """Log-density of VG2(lam, alpha, beta, mu); ``+inf`` at ``x = mu`` when lam <= 1/2."""
    return _eval(p, x)


def mckay_log_pdf(p: McKayParams, x) -> float:
    """Log-density of McKay Type I.

    At ``x = 0`` returns the limit (``+inf`` for ``m < 0``, ``-inf`` for ``m > 0``).

    Raises
    ------
    DomainError
        For ``x < 0``.
    """
    x = float(x)
    if x < 0.0:
        raise DomainError("requires x >= 0")
    if x == 0.0:
        if p.m < 0.0:
            return math.inf
        if p.m > 0.0:
            return -math.inf
        return _mckay_kernel(p)[3]
    return _eval(p, x)


def gamma_log_pdf(p: GammaParams, x) -> float:
    x = float(x)
    if x < 0.0:
        raise DomainError("requires x >= 0")
    if x == 0.0:
        return math.inf if p.r < 1.0 else (math.log(p.lam) if p.r == 1.0 else -math.inf)
    return _eval(p, x)


def log_pdf(dist, x) -> float:
    """Log-density of any family record."""
    if isinstance(dist, McKayParams):
        return mckay_log_pdf(dist, x)
    if isinstance(dist, GammaParams):
        return gamma_log_pdf(dist, x)
    return _eval(dist, x)


def pdf(dist, x) -> float:
    return math.exp(log_pdf(dist, x))


# ---------------------------------------------------------------------- means

def gh_mean(p: GHParams) -> float:
    """``mu + delta beta K_{lam+1}(delta gamma) / (gamma K_lam(delta gamma))``."""
    if p.delta == 0.0:
        return vg_mean(as_vg(p))
    g = p.gamma
    _require(g > 0.0, "requires gamma > 0 for a finite mean")
    if p.beta == 0.0:
        return p.mu
    z = p.delta * g
    return p.mu + p.delta * p.beta / (g * kernel.kratio(p.lam + 1.0, z))


def vg_mean(p) -> float:
    p = as_vg(p)
    return p.mu + p.r * p.theta


def mckay_mean(p: McKayParams) -> float:
    return (2.0 * p.m + 1.0) * p.phi


def gamma_mean(p: GammaParams) -> float:
    return p.r / p.lam


def mean(dist) -> float:
    """Exact mean of any family record."""
    if isinstance(dist, GHParams):
        return gh_mean(dist)
    if isinstance(dist, (VGParams, VG2Params)):
        return vg_mean(dist)
    if isinstance(dist, McKayParams):
        return mckay_mean(dist)
    if isinstance(dist, GammaParams):
        return gamma_mean(dist)
    raise DomainError(f"unsupported distribution record {type(dist).__name__}")


# ----------------------------------------------------- gamma representations

def vg_as_gamma_difference(p) -> tuple:
    """``(scale1, scale2, shape)`` with ``scale1 X1 - scale2 X2 ~ VG`` for X_i ~ Gamma(shape, 1)."""
    p = as_vg(p)
    s = p.s
    theta = p.theta
    if theta >= 0.0:
        return s + theta, p.sigma ** 2 / (s + theta), 0.5 * p.r
    return p.sigma ** 2 / (s - theta), s - theta, 0.5 * p.r


def mckay_as_gamma_sum(p: McKayParams) -> tuple:
    """``(scale1, scale2, shape)`` with ``scale1 X1 + scale2 X2 ~ McKay``."""
    phi, c = p.phi, p.c
    return phi * (c - 1.0) / c, phi * (c + 1.0) / c, p.m + 0.5


def sample_gamma_combo(shape, scale1, scale2, n, seed) -> np.ndarray:
    """Draws of ``scale1 X1 + scale2 X2`` with independent X_i ~ Gamma(shape, 1).

    Uses numpy's Philox counter-based generator keyed by ``seed``; X1 takes
    the first ``n`` standard-gamma draws of the stream and X2 the next ``n``,
    so a fixed seed reproduces the output exactly.
    """
    _require(shape > 0.0, "requires shape > 0")
    n = int(n)
    _require(n >= 1, "requires n >= 1")
    rng = np.random.Generator(np.random.Philox(int(seed)))
    x1 = rng.standard_gamma(shape, n)
    x2 = rng.standard_gamma(shape, n)
    return scale1 * x1 + scale2 * x2


# ---------------------------------------------------------- key-value form

_KV_FIELDS = {
    "gh": (GHParams, [("lambda", "lam"), ("alpha", "alpha"), ("beta", "beta"),
                      ("delta", "delta"), ("mu", "mu")]),
    "vg": (VGParams, [("r", "r"), ("theta", "theta"), ("sigma", "sigma"), ("mu", "mu")]),
    "vg2": (VG2Params, [("lambda", "lam"), ("alpha", "alpha"), ("beta", "beta"), ("mu", "mu")]),
    "mckay": (McKayParams, [("m", "m"), ("b", "b"), ("c", "c")]),
    "gamma": (GammaParams, [("shape", "r"), ("rate", "lam")]),
}


def to_kv(dist) -> str:
    """Flat ``key=value`` text, e.g. ``family=vg r=4 theta=1 sigma=1 mu=0``."""
    _, keys = _KV_FIELDS[dist.family]
    parts = [f"family={dist.family}"]
    parts += [f"{k}={getattr(dist, attr)!r}" for k, attr in keys]
    return " ".join(parts)


def from_kv(text: str):
    """Parse the output of :func:`to_kv` (whitespace or newline separated)."""
    items = {}
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise DomainError(f"malformed key-value token {tok!r}")
        items[key.strip()] = val.strip()
    fam = items.pop("family", None)
    if fam not in _KV_FIELDS:
        raise DomainError(f"unknown family {fam!r}")
    cls, keys = _KV_FIELDS[fam]
    known = {k for k, _ in keys}
    extra = set(items) - known
    if extra:
        raise DomainError(f"unexpected keys for {fam}: {sorted(extra)}")
    kwargs = {attr: float(items[k]) for k, attr in keys if k in items}
    return cls(**kwargs)
