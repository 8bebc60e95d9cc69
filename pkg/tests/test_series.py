from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from naive_integral.bignum import BigComplex
from naive_integral.errors import SeriesStructureError
from naive_integral.series import (PuiseuxSeries, log1p_series, series_compose, series_exp,
                                   series_log, series_mul, series_pow)

P = 40


@pytest.fixture(autouse=True)
def _working_precision():
    mp.mp.dps = P


def S(terms, trunc):
    return PuiseuxSeries.from_terms(terms, trunc, P)


def close(a, b, tol=mp.mpf(10) ** -35):
    assert a.trunc_order == b.trunc_order
    for e in a.exponents():
        assert abs(a[e] - b[e]) < tol, (e, a[e], b[e])


coeff = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@st.composite
def unit_series(draw, n=6):
    cs = draw(st.lists(coeff, min_size=n, max_size=n))
    return PuiseuxSeries(Fraction(0), tuple([1] + cs), P)


def test_bigcomplex_roundtrip_and_precision():
    with mp.workdps(60):
        x = BigComplex.of(mp.mpc(mp.pi, -mp.e), 60)
    assert BigComplex.from_json(x.to_json(), 60) == x
    y = BigComplex.of(1, 30) + x
    assert y.precision == 60
    with pytest.raises(ValueError):
        BigComplex.of(mp.inf)
    with pytest.raises(ValueError):
        BigComplex.of(1, 10)


def test_mul_examples():
    one = S({0: 1}, 3)
    a = S({0: 1, 1: 1}, 3)
    close(series_mul(one, a), a)
    close(series_mul(S({0: 1, 1: 1}, 3), S({0: 1, 1: -1}, 3)), S({0: 1, 2: -1}, 3))


def test_mul_never_claims_unknown_coefficients():
    a = S({-2: 1}, 1)        # known below tau^1
    b = S({0: 1, 1: 2}, 2)   # known below tau^2
    assert series_mul(a, b).trunc_order == Fraction(0)


def test_exp_log_pow_examples():
    close(series_exp(S({}, 3)), S({0: 1}, 3))
    close(series_exp(S({1: 1}, 3)), S({0: 1, 1: 1, 2: mp.mpf(1) / 2}, 3))
    close(series_pow(S({0: 1, 1: 1}, 3), -1), S({0: 1, 1: -1, 2: 1}, 3))
    with pytest.raises(SeriesStructureError):
        series_exp(S({-1: 1}, 2))
    with pytest.raises(SeriesStructureError):
        series_log(S({1: 1}, 3))


def test_compose_examples():
    inner = S({1: 1, 2: 1}, 5)
    close(series_compose([0, 0, 1], inner), S({2: 1, 3: 2, 4: 1}, 6))
    got = series_compose(log1p_series(6, P), S({1: mp.mpf(1) / 2}, 4))
    close(got, S({1: mp.mpf(1) / 2, 2: -mp.mpf(1) / 8, 3: mp.mpf(1) / 24}, 4))


def test_json_roundtrip():
    s = S({Fraction(-1, 2): 1 + 2j, 1: mp.pi}, 3)
    assert PuiseuxSeries.from_json(s.to_json()).to_json() == s.to_json()


@settings(max_examples=100, deadline=None)
@given(unit_series())
def test_exp_inverts_log(s):
    close(series_exp(series_log(s)), s, mp.mpf(10) ** -25)


@settings(max_examples=50, deadline=None)
@given(unit_series(), st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_pow_pair_is_one(s, p):
    prod = series_mul(series_pow(s, p), series_pow(s, -p))
    close(prod, S({0: 1}, s.trunc_order), mp.mpf(10) ** -25)


@settings(max_examples=50, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=8), st.lists(coeff, min_size=1, max_size=8))
def test_mul_matches_naive_convolution(a, b):
    A = PuiseuxSeries(Fraction(0), tuple(a), P)
    B = PuiseuxSeries(Fraction(1, 2), tuple(b), P)
    got = series_mul(A, B)
    for k, e in enumerate(got.exponents()):
        m = int(2 * (e - Fraction(1, 2)))
        ref = sum(mp.mpc(a[i]) * mp.mpc(b[m - i]) for i in range(m + 1)
                  if i < len(a) and m - i < len(b))
        assert abs(got[e] - ref) < mp.mpf(10) ** -30


def test_truncation_error_ratio():
    # exp(tau) truncated at tau^4: halving tau divides the error by about 2^4
    s = series_exp(S({1: 1}, 4))
    errs = [abs(s(t) - mp.exp(t)) for t in (mp.mpf("0.02"), mp.mpf("0.01"))]
    assert 16 * 0.8 < errs[0] / errs[1] < 16 * 1.2
