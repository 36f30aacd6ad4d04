import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from ghbounds.conjectures import TABLE1
from ghbounds.distributions import (GHParams, GammaParams, McKayParams, VG2Params, VGParams,
                                    mean, pdf)
from ghbounds.errors import DomainError
from ghbounds.intervals import CONJ_LOWER, CONJ_UPPER, EQUALITY
from ghbounds.median import (LOG2, asym_laplace_median, cdf, cdf_with_error,
                             conjectured_median_bounds, gamma_median_bounds, median,
                             median_bounds)

LN2 = math.log(2.0)


def by_name(entries):
    return {e.name: e for e in entries}


def quad_cdf(dist, x, lo):
    """CDF by scipy's adaptive quadrature of the density, as a second route."""
    v, _ = integrate.quad(lambda t: pdf(dist, t), lo, x, limit=400, epsabs=1e-12, epsrel=1e-12)
    return v


# ----------------------------------------------------------------- CDF

def test_cdf_at_asym_laplace_median():
    p = VGParams(2.0, 1.0, 1.0)
    m = asym_laplace_median(1.0, 1.0)
    assert abs(m - (1 + math.sqrt(2)) * math.log(1 + 1 / math.sqrt(2))) < 1e-14
    assert abs(cdf(p, m) - 0.5) < 1e-9


def test_cdf_table2_entry():
    assert abs(cdf(McKayParams.from_phi(1.0, 1.2, 1.0), 2.425) - 0.5) < 5e-4


@pytest.mark.parametrize("r,lam", [(0.3, 1.0), (1.0, 2.0), (4.5, 0.5), (30.0, 3.0)])
def test_gamma_cdf_matches_scipy(r, lam):
    g = GammaParams(r, lam)
    for q in (0.01, 0.3, 0.5, 0.9, 0.999):
        x = stats.gamma.ppf(q, r, scale=1 / lam)
        assert abs(cdf(g, x) - q) < 1e-10


@pytest.mark.parametrize("dist,lo", [
    (GHParams(1.3, 2.0, 0.7, 0.8, 0.2), -np.inf),
    (GHParams(-1.0, 1.5, -0.5, 1.2), -np.inf),
    (VGParams(3.5, 0.6, 1.1), -np.inf),
    (VGParams(0.7, -0.4, 0.9), -np.inf),
    (McKayParams(1.5, 0.8, 1.7), 0.0),
])
def test_cdf_matches_scipy_quad(dist, lo):
    c = mean(dist)
    for x in (c - 2.0, c - 0.3, c, c + 0.7, c + 3.0):
        if lo == 0.0 and x <= 0.0:
            assert cdf(dist, x) == 0.0
            continue
        # split at the location, where VG densities with r <= 1 are singular
        split = getattr(dist, "mu", 0.0)
        v = quad_cdf(dist, min(x, split), lo) if lo < split else 0.0
        if x > split:
            v += quad_cdf(dist, x, max(split, lo))
        assert abs(cdf(dist, x) - v) < 1e-9


def test_cdf_monotone_and_limits():
    for d in (VGParams(1.5, 1.0, 0.5), McKayParams(0.2, 1.0, 3.0), GHParams(2.0, 1.0, 0.4, 0.5)):
        xs = np.linspace(-8, 40, 97)
        f = [cdf(d, x) for x in xs]
        assert all(b >= a - 1e-10 for a, b in zip(f, f[1:]))
        assert f[0] < 1e-3 and f[-1] > 1 - 1e-3


def test_cdf_reflection():
    p = GHParams(0.8, 2.0, 0.9, 0.7, 0.4)
    q = GHParams(0.8, 2.0, -0.9, 0.7, -0.4)
    for x in (-1.0, 0.3, 2.2):
        assert abs(cdf(p, x) + cdf(q, -x) - 1.0) < 2e-10


def test_cdf_error_estimate_reported():
    v, e = cdf_with_error(VGParams(2.5, 1.0, 1.0), 1.7)
    assert 0 <= e <= 1e-10 and 0 < v < 1
    with pytest.raises(DomainError):
        cdf(VGParams(2.5, 1.0, 1.0), 1.0, tol=0.0)


# --------------------------------------------------------------- median

def test_median_examples():
    rep = median(VGParams(2.0, 1.0, 1.0))
    assert abs(rep.median - 1.2911214) < 1e-7
    assert abs(median(VGParams(2.5, 1.0, 1.0)).median - 1.775) <= 1e-3
    for lam in (0.5, 1.0, 3.0):
        assert abs(median(GammaParams(1.0, lam)).median - LN2 / lam) < 1e-8


def test_median_report_contract():
    rep = median(McKayParams(2.0, 1.0, 1.5))
    assert abs(rep.cdf_residual) <= rep.tol
    assert rep.bracket.contains(rep.median)
    assert rep.quad_error >= 0 and rep.iterations >= 1
    assert rep.achieved == abs(rep.cdf_residual) + rep.quad_error


def test_symmetric_short_circuit():
    assert median(VGParams(3.0, 0.0, 2.0, 1.5)).median == 1.5
    assert median(GHParams(1.0, 2.0, 0.0, 1.0, -0.3)).median == -0.3
    assert median_bounds(GHParams(1.0, 2.0, 0.0, 1.0, -0.3))[0].kind == EQUALITY


def test_gamma_zero_rejected():
    with pytest.raises(DomainError):
        median(GHParams(-1.5, 1.0, 1.0, 1.0))


def _grid200():
    rng = np.random.default_rng(7)
    out = []
    for _ in range(50):
        lam = rng.uniform(-2, 4)
        a = rng.uniform(0.3, 4)
        out.append(GHParams(lam, a, a * rng.uniform(-0.9, 0.9), rng.uniform(0.05, 3),
                            rng.uniform(-1, 1)))
        out.append(VGParams(rng.uniform(0.2, 20), rng.uniform(-2, 2), rng.uniform(0.05, 4),
                            rng.uniform(-1, 1)))
        out.append(McKayParams(rng.uniform(-0.45, 15), rng.uniform(0.1, 3), 1 + 10 ** rng.uniform(-2.5, 1.5)))
        out.append(GammaParams(rng.uniform(0.1, 40), rng.uniform(0.1, 5)))
    return out


def test_cdf_half_at_median_on_grid():
    worst = 0.0
    for d in _grid200():
        rep = median(d)
        worst = max(worst, abs(cdf(d, rep.median, tol=1e-11) - 0.5))
    assert worst <= 1e-8


@pytest.mark.parametrize("r", [0.5, 1.7, 6.0])
@pytest.mark.parametrize("theta,sigma", [(0.5, 2.0), (3.0, 0.4)])
def test_vg_median_scaling(r, theta, sigma):
    a = median(VGParams(r, theta, sigma)).median
    b = median(VGParams(r, 1.0, sigma / theta)).median
    assert abs(a - theta * b) < 1e-8 * max(1.0, abs(a))


@pytest.mark.parametrize("m,c", [(0.0, 1.04), (1.3, 2.0), (6.0, 9.0)])
def test_mckay_median_scaling(m, c):
    a = median(McKayParams.from_phi(m, c, 2.5)).median
    b = median(McKayParams.from_phi(m, c, 1.0)).median
    assert abs(a - 2.5 * b) < 1e-8 * max(1.0, a)


# ----------------------------------------------------------- gamma bounds

@pytest.mark.parametrize("r", [0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0])
@pytest.mark.parametrize("lam", [0.25, 1.0, 4.0])
def test_gamma_sandwich(r, lam):
    g = GammaParams(r, lam)
    m = median(g).median
    assert abs(m - stats.gamma.ppf(0.5, r, scale=1 / lam)) < 1e-8 * max(1, m)
    b = gamma_median_bounds(g)
    for e in b.all():
        assert e.holds_for(m, 1e-8 * max(1.0, m)), (e, m)
    ch = [e.value for e in b.chain]
    assert ch[0] <= ch[1] <= ch[2] <= ch[3]
    assert m < r / lam


def test_gamma_bound_examples():
    b = by_name(gamma_median_bounds(GammaParams(1.0, 1.0)).all())
    assert b["gaminteger.upper"].kind == EQUALITY and abs(b["gaminteger.upper"].value - LN2) < 1e-15
    b = by_name(gamma_median_bounds(GammaParams(3.0, 1.0)).all())
    m = median(GammaParams(3.0, 1.0)).median
    assert b["gaminteger.lower"].value == pytest.approx(8 / 3)
    assert 8 / 3 < m < 2 + LN2
    b = by_name(gamma_median_bounds(GammaParams(0.5, 2.0)).all())
    assert not b["gaminteger.lower"].valid


# ------------------------------------------------------ asymmetric Laplace

@pytest.mark.parametrize("theta", [-3.0, -0.4, 0.0, 0.01, 0.7, 5.0])
@pytest.mark.parametrize("sigma", [0.1, 1.0, 4.0])
def test_asym_laplace_agreement(theta, sigma):
    assert abs(median(VGParams(2.0, theta, sigma)).median - asym_laplace_median(theta, sigma)) < 1e-8


def test_asym_laplace_negative_theta_is_stable():
    assert asym_laplace_median(-1e8, 1.0) == pytest.approx(-asym_laplace_median(1e8, 1.0), rel=1e-12)
    assert asym_laplace_median(-1e3, 1e-3) < 0


# ------------------------------------------------------- conjectured bounds

def test_conjectured_vg_on_table1_grid():
    for r in TABLE1["rows"]:
        for s in TABLE1["cols"]:
            v = VGParams(r, 1.0, s)
            m = median(v).median
            for e in conjectured_median_bounds(v, endpoints=True):
                if e.valid:
                    assert e.holds_for(m, 1e-7), (r, s, e, m)


def test_conjectured_mckay_with_endpoints():
    for m_ in (0.0, 0.5, 1.0, 3.0):
        for c in (1.01, 1.5, 8.0):
            p = McKayParams.from_phi(m_, c, 1.0)
            med = median(p).median
            for e in conjectured_median_bounds(p, endpoints=True):
                if e.valid:
                    assert e.holds_for(med, 1e-7), (m_, c, e, med)


def test_printed_c4_lower_contradicts_table2():
    # the chain as printed would put (2m+1) e^(-log2/(2m+1)) below the median;
    # at m=0, c=1.01 that is 0.5 against a median of 0.458
    med = median(McKayParams.from_phi(0.0, 1.01, 1.0)).median
    assert round(med, 3) == 0.458 and med < math.exp(-LN2)
    b = by_name(conjectured_median_bounds(McKayParams.from_phi(0.0, 1.01, 1.0)))
    assert b["c4.lower"].value == pytest.approx(math.exp(-2 * LN2)) and b["c4.lower"].value < med


def test_conjectured_gh_lower():
    for lam in (0.7, 1.0, 2.5):
        p = GHParams(lam, 2.0, 1.0, 1.0)
        (e,) = conjectured_median_bounds(p)
        assert e.kind == CONJ_LOWER and e.value < median(p).median
    with pytest.raises(DomainError):
        conjectured_median_bounds(GHParams(0.5, 2.0, 1.0, 1.0))


def test_conjectured_reflection():
    a = by_name(conjectured_median_bounds(VGParams(3.0, 1.0, 1.0, 0.5)))
    b = by_name(conjectured_median_bounds(VGParams(3.0, -1.0, 1.0, -0.5)))
    assert b["c3.lower"].kind == CONJ_UPPER and b["c3.lower"].value == -a["c3.lower"].value
    assert conjectured_median_bounds(VGParams(3.0, 0.0, 1.0)) == []


def test_median_below_mean_for_gamma():
    for r in (0.5, 2.0, 9.0):
        g = GammaParams(r, 1.0)
        assert median(g).median < mean(g)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.3, 15), st.floats(0.05, 3), st.floats(0.05, 3))
def test_vg_median_inside_proven_region(r, theta, sigma):
    v = VGParams(r, theta, sigma)
    m = median(v).median
    assert abs(cdf(v, m) - 0.5) <= 1e-8
    assert m < mean(v)


def test_vg2_median_equals_vg():
    p = VG2Params(3.0, 2.0, 0.5, 0.1)
    from ghbounds.distributions import as_vg
    assert abs(median(p).median - median(as_vg(p)).median) < 1e-12
