"""Pure-Python numerical kernels.

This module mirrors ``_ckernels.pyx`` line for line; the compiled module is
preferred at import time (see ``ghbounds._backend``).  Both expose:

``log_kve(nu, x)``
    log(K_nu(x) * exp(x)), any real nu.
``log_ive(nu, x)``
    log(I_nu(x) * exp(-x)), nu >= -1.
``kratio(nu, x)``
    K_{nu-1}(x) / K_nu(x), any real nu.
``iratio(nu, x)``
    I_nu(x) / I_{nu-1}(x), nu >= 0.
``log_density(kind, params, x)``
    Log-density of one of the distribution kernels below at ``x`` (location 0).
``gk15(kind, params, x0, power, ta, tb)``
    Gauss-Kronrod 7/15 estimate of the density integral over ``t`` in
    ``[ta, tb]`` with ``x = x0 + sign(t)|t|**power``.

Bessel evaluation: Temme's series (x <= 2) or Steed's continued fraction
(x > 2) for K at the reduced order |mu| <= 1/2, upward recurrence for K,
the Gauss continued fraction for I-ratios plus the Wronskian for I, and the
Hankel expansion for I when x is large.  Recurrences run on ratios with an
explicit binary exponent so nothing over- or underflows before the final log.
"""

import math

EPS = 1e-16
FPMIN = 1e-300
MAXIT = 100000
LN2 = math.log(2.0)
LOG_SQRT_PI_2 = 0.5 * math.log(math.pi / 2.0)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Temme's series is used up to this argument, Steed's CF2 above it.
X_TEMME = 2.0
# Hankel expansion for I is attempted when x >= max(HANKEL_X, HANKEL_NU2 * nu**2).
HANKEL_X = 30.0
HANKEL_NU2 = 0.5

KIND_GH = 0
KIND_VG = 1
KIND_MCKAY = 2
KIND_GAMMA = 3

# Taylor coefficients of 1/Gamma(1+z) about z = 0.
_RGAMMA = (
    1.0,
    5.7721566490153286061e-1,
    -6.5587807152025388108e-1,
    -4.2002635034095235529e-2,
    1.665386113822914895e-1,
    -4.2197734555544336748e-2,
    -9.6219715278769735621e-3,
    7.2189432466630995424e-3,
    -1.1651675918590651121e-3,
    -2.1524167411495097282e-4,
    1.2805028238811618615e-4,
    -2.0134854780788238656e-5,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
)

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gamma_terms(mu):
    """Return (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2."""
    mu2 = mu * mu
    even = 0.0
    odd = 0.0
    k = len(_RGAMMA) - 1
    while k >= 0:
        if k % 2 == 0:
            even = even * mu2 + _RGAMMA[k]
        else:
            odd = odd * mu2 + _RGAMMA[k]
        k -= 1
    return -odd, even, even + mu * odd, even - mu * odd


def _k_reduced(mu, x):
    """Scaled K_mu(x) e^x and the ratio K_{mu+1}/K_mu for |mu| <= 1/2."""
    if x <= X_TEMME:
        x2 = 0.5 * x
        pimu = math.pi * mu
        fact = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = mu * d
        fact2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _gamma_terms(mu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        mu2 = mu * mu
        i = 1
        while i < MAXIT:
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= d / i
            p /= i - mu
            q /= i + mu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * EPS:
                break
            i += 1
        kmu = total * math.exp(x)
        return kmu, total1 * (2.0 / x) / total
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    i = 2
    while i < MAXIT:
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < EPS:
            break
        i += 1
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) / s
    return kmu, (mu + x + 0.5 - h) / x


def _split_order(nu):
    n = int(math.floor(nu + 0.5))
    return n, nu - n


def log_kve(nu, x):
    nu = abs(nu)
    n, mu = _split_order(nu)
    kmu, rho = _k_reduced(mu, x)
    mant = kmu
    expo = 0
    xi2 = 2.0 / x
    for j in range(n):
        mant *= rho
        if mant > 1e250 or mant < 1e-250:
            mant, e2 = math.frexp(mant)
            expo += e2
        rho = 1.0 / rho + (mu + j + 1) * xi2
    return math.log(mant) + expo * LN2


def kratio(nu, x):
    if nu < 0.5:
        return 1.0 / kratio(1.0 - nu, x)
    n, mu = _split_order(nu)
    kmu, rho = _k_reduced(mu, x)
    xi2 = 2.0 / x
    for j in range(1, n):
        rho = 1.0 / rho + (mu + j) * xi2
    return 1.0 / rho


def _cf_iratio(nu, x):
    """I_{nu+1}(x) / I_nu(x) by modified Lentz, nu > -1."""
    xi2 = 2.0 / x
    f = FPMIN
    c = f
    d = 0.0
    b = nu * xi2
    i = 1
    while i < MAXIT:
        b += xi2
        d = b + d
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + 1.0 / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < EPS:
            break
        i += 1
    return f


def _hankel_sum(nu, x, sign):
    """Sum of the Hankel expansion; sign=-1 for I, +1 for K.  Returns 0 on failure."""
    mu4 = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    k = 1
    prev = 1.0
    while k < 200:
        term *= sign * (mu4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        total += term
        if abs(term) < EPS * abs(total):
            return total
        if abs(term) > prev and k > 2:
            return 0.0
        prev = abs(term)
        k += 1
    return 0.0


def _use_hankel(nu, x):
    return x >= HANKEL_X and x >= HANKEL_NU2 * nu * nu


def _log_ive_nonneg(nu, x):
    if _use_hankel(nu, x):
        s = _hankel_sum(nu, x, -1.0)
        if s > 0.0:
            return math.log(s) - 0.5 * math.log(2.0 * math.pi * x)
    n, mu = _split_order(nu)
    kmu, rho = _k_reduced(mu, x)
    xi2 = 2.0 / x
    # ratio r_k = I_{k+1}/I_k at the top order, then recur down to mu
    r = _cf_iratio(nu - 1.0, x) if n > 0 else _cf_iratio(mu, x)
    mant = 1.0
    expo = 0
    j = n
    while j > 0:
        # r holds I_{mu+j}/I_{mu+j-1}
        mant *= r
        if mant < 1e-250:
            mant, e2 = math.frexp(mant)
            expo += e2
        if j > 1:
            r = 1.0 / ((mu + j - 1) * xi2 + r)
        j -= 1
    # now r = I_{mu+1}/I_mu
    imu = 1.0 / (x * kmu * (r + rho))
    return math.log(imu) + math.log(mant) + expo * LN2


def log_ive(nu, x):
    if nu >= 0.0:
        return _log_ive_nonneg(nu, x)
    a = -nu
    if a == 1.0:
        return _log_ive_nonneg(1.0, x)
    li = _log_ive_nonneg(a, x)
    lk = log_kve(a, x) - 2.0 * x + math.log(2.0 / math.pi * math.sin(math.pi * a))
    hi = li if li > lk else lk
    return hi + math.log(math.exp(li - hi) + math.exp(lk - hi))


def iratio(nu, x):
    if _use_hankel(nu, x):
        s1 = _hankel_sum(nu, x, -1.0)
        s0 = _hankel_sum(nu - 1.0, x, -1.0)
        if s1 > 0.0 and s0 > 0.0:
            return s1 / s0
    if nu < 1.0:
        # I_{nu-1}/I_nu = 2nu/x + I_{nu+1}/I_nu avoids the fraction at negative order
        return 1.0 / (2.0 * nu / x + _cf_iratio(nu, x))
    return _cf_iratio(nu - 1.0, x)


def log_density(kind, params, x):
    if kind == KIND_GH:
        lam, alpha, beta, delta, lognorm = params[0], params[1], params[2], params[3], params[4]
        q = math.hypot(delta, x)
        z = alpha * q
        nu = lam - 0.5
        return lognorm + beta * x - z + log_kve(nu, z) + nu * math.log(q)
    if kind == KIND_VG:
        nu, zscale, lognorm, rate_l, rate_r, log_at_zero = params
        ax = abs(x)
        if ax == 0.0:
            return log_at_zero
        decay = -x * rate_r if x > 0.0 else x * rate_l
        return lognorm + decay + nu * math.log(ax) + log_kve(nu, zscale * ax)
    if kind == KIND_MCKAY:
        m, b, cm1, lognorm = params[0], params[1], params[2], params[3]
        if x <= 0.0:
            return -math.inf
        z = x / b
        return lognorm + m * math.log(x) + log_ive(m, z) - cm1 * z
    if kind == KIND_GAMMA:
        r, lam, lognorm = params[0], params[1], params[2]
        if x <= 0.0:
            return -math.inf
        return lognorm + (r - 1.0) * math.log(x) - lam * x
    raise ValueError("unknown density kind %r" % (kind,))


def _integrand(kind, params, x0, power, t):
    if power == 1.0:
        return math.exp(log_density(kind, params, x0 + t))
    at = abs(t)
    if at == 0.0:
        return 0.0
    dx = at ** power
    x = x0 + dx if t > 0.0 else x0 - dx
    ld = log_density(kind, params, x)
    return math.exp(ld + math.log(power) + (power - 1.0) * math.log(at))


def gk15(kind, params, x0, power, ta, tb):
    centr = 0.5 * (ta + tb)
    hlgth = 0.5 * (tb - ta)
    fc = _integrand(kind, params, x0, power, centr)
    resg = fc * WG[3]
    resk = fc * WGK[7]
    for j in range(7):
        absc = hlgth * XGK[j]
        fsum = (_integrand(kind, params, x0, power, centr - absc)
                + _integrand(kind, params, x0, power, centr + absc))
        resk += WGK[j] * fsum
        if j % 2 == 1:
            resg += WG[j // 2] * fsum
    resk *= hlgth
    resg *= hlgth
    return resk, abs(resk - resg)
