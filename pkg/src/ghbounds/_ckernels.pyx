# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Same algorithms and public signatures as ``_pykernels``; see that module for
the description of each routine.
"""

from libc.math cimport (fabs, sqrt, log, exp, sin, sinh, cosh, floor, frexp,
                        hypot, INFINITY, M_PI)

cdef double EPS = 1e-16
cdef double FPMIN = 1e-300
cdef int MAXIT = 100000
cdef double LN2 = 0.6931471805599453
cdef double X_TEMME = 2.0
cdef double HANKEL_X = 30.0
cdef double HANKEL_NU2 = 0.5

KIND_GH = 0
KIND_VG = 1
KIND_MCKAY = 2
KIND_GAMMA = 3

cdef double[26] _RGAMMA = [
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
]

cdef double[8] XGK = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
cdef double[8] WGK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
cdef double[4] WG = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]


cdef void _k_reduced(double mu, double x, double* kmu, double* rho) nogil:
    cdef double x2, pimu, fact, d, e, fact2, gam1, gam2, gampl, gammi
    cdef double ff, total, total1, p, q, c, mu2, delta, even, odd
    cdef double b, h, delh, q1, q2, a1, a, s, qnew, dels
    cdef int i, k
    if x <= X_TEMME:
        x2 = 0.5 * x
        pimu = M_PI * mu
        fact = 1.0 if fabs(pimu) < EPS else pimu / sin(pimu)
        d = -log(x2)
        e = mu * d
        fact2 = 1.0 if fabs(e) < EPS else sinh(e) / e
        mu2 = mu * mu
        even = 0.0
        odd = 0.0
        k = 25
        while k >= 0:
            if k % 2 == 0:
                even = even * mu2 + _RGAMMA[k]
            else:
                odd = odd * mu2 + _RGAMMA[k]
            k -= 1
        gam1 = -odd
        gam2 = even
        gampl = even + mu * odd
        gammi = even - mu * odd
        ff = fact * (gam1 * cosh(e) + gam2 * fact2 * d)
        total = ff
        e = exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        i = 1
        while i < MAXIT:
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= d / i
            p /= i - mu
            q /= i + mu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if fabs(delta) < fabs(total) * EPS:
                break
            i += 1
        kmu[0] = total * exp(x)
        rho[0] = total1 * (2.0 / x) / total
        return
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
        if fabs(dels / s) < EPS:
            break
        i += 1
    h = a1 * h
    kmu[0] = sqrt(M_PI / (2.0 * x)) / s
    rho[0] = (mu + x + 0.5 - h) / x


cdef inline int _split(double nu, double* mu) nogil:
    cdef int n = <int>floor(nu + 0.5)
    mu[0] = nu - n
    return n


cdef double c_log_kve(double nu, double x) nogil:
    cdef double mu, kmu, rho, mant, xi2
    cdef int n, j, e2
    cdef long expo = 0
    nu = fabs(nu)
    n = _split(nu, &mu)
    _k_reduced(mu, x, &kmu, &rho)
    mant = kmu
    xi2 = 2.0 / x
    for j in range(n):
        mant *= rho
        if mant > 1e250 or mant < 1e-250:
            mant = frexp(mant, &e2)
            expo += e2
        rho = 1.0 / rho + (mu + j + 1) * xi2
    return log(mant) + expo * LN2


cdef double c_kratio(double nu, double x) nogil:
    cdef double mu, kmu, rho, xi2
    cdef int n, j
    if nu < 0.5:
        return 1.0 / c_kratio(1.0 - nu, x)
    n = _split(nu, &mu)
    _k_reduced(mu, x, &kmu, &rho)
    xi2 = 2.0 / x
    for j in range(1, n):
        rho = 1.0 / rho + (mu + j) * xi2
    return 1.0 / rho


cdef double _cf_iratio(double nu, double x) nogil:
    cdef double xi2 = 2.0 / x
    cdef double f = FPMIN
    cdef double c = f
    cdef double d = 0.0
    cdef double b = nu * xi2
    cdef double delta
    cdef int i = 1
    while i < MAXIT:
        b += xi2
        d = b + d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = b + 1.0 / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        f *= delta
        if fabs(delta - 1.0) < EPS:
            break
        i += 1
    return f


cdef double _hankel_sum(double nu, double x, double sign) nogil:
    cdef double mu4 = 4.0 * nu * nu
    cdef double term = 1.0
    cdef double total = 1.0
    cdef double prev = 1.0
    cdef int k = 1
    while k < 200:
        term *= sign * (mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x)
        total += term
        if fabs(term) < EPS * fabs(total):
            return total
        if fabs(term) > prev and k > 2:
            return 0.0
        prev = fabs(term)
        k += 1
    return 0.0


cdef inline bint _use_hankel(double nu, double x) nogil:
    return x >= HANKEL_X and x >= HANKEL_NU2 * nu * nu


cdef double _log_ive_nonneg(double nu, double x) nogil:
    cdef double s, mu, kmu, rho, xi2, r, mant, imu
    cdef int n, j, e2
    cdef long expo = 0
    if _use_hankel(nu, x):
        s = _hankel_sum(nu, x, -1.0)
        if s > 0.0:
            return log(s) - 0.5 * log(2.0 * M_PI * x)
    n = _split(nu, &mu)
    _k_reduced(mu, x, &kmu, &rho)
    xi2 = 2.0 / x
    r = _cf_iratio(nu - 1.0, x) if n > 0 else _cf_iratio(mu, x)
    mant = 1.0
    j = n
    while j > 0:
        mant *= r
        if mant < 1e-250:
            mant = frexp(mant, &e2)
            expo += e2
        if j > 1:
            r = 1.0 / ((mu + j - 1) * xi2 + r)
        j -= 1
    imu = 1.0 / (x * kmu * (r + rho))
    return log(imu) + log(mant) + expo * LN2


cdef double c_log_ive(double nu, double x) nogil:
    cdef double a, li, lk, hi
    if nu >= 0.0:
        return _log_ive_nonneg(nu, x)
    a = -nu
    if a == 1.0:
        return _log_ive_nonneg(1.0, x)
    li = _log_ive_nonneg(a, x)
    lk = c_log_kve(a, x) - 2.0 * x + log(2.0 / M_PI * sin(M_PI * a))
    hi = li if li > lk else lk
    return hi + log(exp(li - hi) + exp(lk - hi))


cdef double c_iratio(double nu, double x) nogil:
    cdef double s1, s0
    if _use_hankel(nu, x):
        s1 = _hankel_sum(nu, x, -1.0)
        s0 = _hankel_sum(nu - 1.0, x, -1.0)
        if s1 > 0.0 and s0 > 0.0:
            return s1 / s0
    if nu < 1.0:
        return 1.0 / (2.0 * nu / x + _cf_iratio(nu, x))
    return _cf_iratio(nu - 1.0, x)


cdef double c_log_density(int kind, double* p, double x) nogil:
    cdef double q, z, nu, ax, decay
    if kind == 0:
        q = hypot(p[3], x)
        z = p[1] * q
        nu = p[0] - 0.5
        return p[4] + p[2] * x - z + c_log_kve(nu, z) + nu * log(q)
    if kind == 1:
        ax = fabs(x)
        if ax == 0.0:
            return p[5]
        decay = -x * p[4] if x > 0.0 else x * p[3]
        return p[2] + decay + p[0] * log(ax) + c_log_kve(p[0], p[1] * ax)
    if kind == 2:
        if x <= 0.0:
            return -INFINITY
        z = x / p[1]
        return p[3] + p[0] * log(x) + c_log_ive(p[0], z) - p[2] * z
    if x <= 0.0:
        return -INFINITY
    return p[2] + (p[0] - 1.0) * log(x) - p[1] * x


cdef double _integrand(int kind, double* p, double x0, double power, double t) nogil:
    cdef double at, dx, x
    if power == 1.0:
        return exp(c_log_density(kind, p, x0 + t))
    at = fabs(t)
    if at == 0.0:
        return 0.0
    dx = at ** power
    x = x0 + dx if t > 0.0 else x0 - dx
    return exp(c_log_density(kind, p, x) + log(power) + (power - 1.0) * log(at))


cdef void _load(params, double* p) except *:
    cdef int i
    cdef int n = len(params)
    if n > 6 or n < 3:
        raise ValueError("expected 3 to 6 kernel parameters")
    for i in range(6):
        p[i] = params[i] if i < n else 0.0


def log_kve(double nu, double x):
    return c_log_kve(nu, x)


def log_ive(double nu, double x):
    return c_log_ive(nu, x)


def kratio(double nu, double x):
    return c_kratio(nu, x)


def iratio(double nu, double x):
    return c_iratio(nu, x)


def log_density(int kind, params, double x):
    cdef double[6] p
    if kind < 0 or kind > 3:
        raise ValueError("unknown density kind %r" % (kind,))
    _load(params, p)
    return c_log_density(kind, p, x)


def gk15(int kind, params, double x0, double power, double ta, double tb):
    cdef double[6] p
    cdef double centr, hlgth, fc, resg, resk, absc, fsum
    cdef int j
    if kind < 0 or kind > 3:
        raise ValueError("unknown density kind %r" % (kind,))
    _load(params, p)
    centr = 0.5 * (ta + tb)
    hlgth = 0.5 * (tb - ta)
    fc = _integrand(kind, p, x0, power, centr)
    resg = fc * WG[3]
    resk = fc * WGK[7]
    for j in range(7):
        absc = hlgth * XGK[j]
        fsum = (_integrand(kind, p, x0, power, centr - absc)
                + _integrand(kind, p, x0, power, centr + absc))
        resk += WGK[j] * fsum
        if j % 2 == 1:
            resg += WG[j // 2] * fsum
    resk *= hlgth
    resg *= hlgth
    return resk, fabs(resk - resg)
