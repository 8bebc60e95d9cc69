from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from naive_integral.errors import DomainError
from naive_integral.perron import (cnk_table, gaussian_moment, minorant_q1, minorant_q2,
                                   perron_coefficients, perron_sum, verify_condition_c)

small = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def test_cnk_examples():
    alpha = mp.mpf("0.7")
    t = cnk_table([mp.mpf(1)], [alpha], 4)
    assert abs(t[1, 1] + alpha) < 1e-14
    assert abs(t[2, 2] - alpha**2 / 2) < 1e-14
    beta = mp.mpf("0.3")
    t = cnk_table([mp.mpf(1), beta], [], 4)
    assert t[0, 0] == 1 and t[1, 0] == beta
    assert all(t[n, k] == 0 for n in range(5) for k in range(1, n + 1))


@settings(max_examples=200, deadline=None)
@given(st.lists(small, min_size=1, max_size=6), st.lists(small, max_size=6),
       st.integers(min_value=1, max_value=8))
def test_cnk_triangular(b, a, N):
    t = cnk_table([mp.mpc(x) for x in b], [mp.mpc(x) for x in a], N)
    assert all(len(t.c[n]) == n + 1 for n in range(N + 1))
    assert all(t[n, k] == 0 for n in range(N + 1) for k in range(n + 1, N + 2))


def _brute_force(b, a, N):
    """Expand the product of the two truncated double series directly."""
    # exp(-w g(z)) = sum_k (-w)^k g(z)^k / k!, with g(z) = sum_{n>=3} a_n z^{n-2}
    g = {j: a[j - 1] for j in range(1, len(a) + 1)}
    out = {}
    for k in range(N + 1):
        gk = {0: mp.mpc(1)}
        for _ in range(k):
            nxt = {}
            for i, x in gk.items():
                for j, y in g.items():
                    if i + j <= N:
                        nxt[i + j] = nxt.get(i + j, 0) + x * y
            gk = nxt
        for i, x in gk.items():
            for j, y in enumerate(b):
                if i + j <= N:
                    out[(i + j, k)] = out.get((i + j, k), 0) + y * x * (-1) ** k / mp.factorial(k)
    return out


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=1, max_size=9), st.lists(small, min_size=1, max_size=9))
def test_cnk_matches_bruteforce_at_N8(b, a):
    with mp.workdps(40):
        b = [mp.mpc(x) for x in b]
        a = [mp.mpc(x) for x in a]
        t = cnk_table(b, a, 8)
        ref = _brute_force(b, a, 8)
        for n in range(9):
            for k in range(n + 1):
                assert abs(t[n, k] - ref.get((n, k), 0)) < mp.mpf(10) ** -30


def test_gaussian_leading_term():
    with mp.workdps(50):
        tau = mp.mpf(1) / 100
        t = cnk_table([mp.mpf(1)], [], 6)
        r = perron_sum(t, 1, tau, 3, precision=50)
        assert abs(r.value.value - mp.sqrt(mp.pi * tau)) < mp.mpf(10) ** -48
        assert abs(r.terms[0][1].value - mp.sqrt(mp.pi)) < mp.mpf(10) ** -48
        assert all(abs(c.value) == 0 for _, c in r.terms[1:])


def test_two_term_sum_vs_quadrature():
    with mp.workdps(40):
        tau = mp.mpf("0.04")
        t = cnk_table([mp.mpf(1), 0, mp.mpf(1)], [], 4)
        r = perron_sum(t, 1, tau, 2, precision=40)
        exact = mp.quad(lambda x: (1 + x * x) * mp.exp(-x * x / tau), [-1, 0, 1])
        assert abs(r.value.value - mp.sqrt(mp.pi * tau) * (1 + tau / 2)) < mp.mpf(10) ** -35
        # all omitted terms vanish here; what is left is the Gaussian tail beyond |x| = 1
        assert abs(r.value.value - exact) < mp.exp(-1 / tau)


def test_terms_strictly_increasing_and_remainder():
    t = cnk_table([mp.mpf(1), mp.mpf("0.5")], [mp.mpf("0.2"), mp.mpf("0.1")], 8)
    r = perron_sum(t, mp.mpf(2), mp.mpf("0.01"), 3, precision=40)
    exps = [e for e, _ in r.terms]
    assert exps == [Fraction(1, 2), Fraction(3, 2), Fraction(5, 2)]
    assert r.truncation_exponent == Fraction(7, 2)
    assert r.remainder_estimate > 0


def test_a2_must_have_positive_real_part():
    t = cnk_table([mp.mpf(1)], [], 2)
    with pytest.raises(DomainError):
        perron_sum(t, -1, 0.1, 1)
    with pytest.raises(DomainError):
        gaussian_moment(2, 1j, 0.1)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 6])
def test_gaussian_moment_vs_quadrature(n):
    with mp.workdps(40):
        a2, h = mp.mpc(2, 1), mp.mpf("0.1")
        direct = mp.quad(lambda x: x**n * mp.exp(-a2 * x * x / h), [-mp.inf, 0, mp.inf])
        assert abs(gaussian_moment(n, a2, h) - direct) < mp.mpf(10) ** -30


def test_perron_with_cubic_phase_vs_quadrature():
    # phi = x^2 + x^3/5, f = 1 + x: the expansion error shrinks like h^(N+1/2)
    with mp.workdps(40):
        a = [mp.mpf(1) / 5]
        b = [mp.mpf(1), mp.mpf(1)]
        t = cnk_table(b, a, 8)
        for h in (mp.mpf("0.01"), mp.mpf("0.005")):
            exact = mp.quad(lambda x: (1 + x) * mp.exp(-(x * x + x**3 / 5) / h), [-1, 0, 1])
            r = perron_sum(t, 1, h, 4, precision=40)
            assert abs(r.value.value - exact) < 3 * r.remainder_estimate


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=5),
       st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False))
def test_coefficient_polynomial_bound(b, a, w):
    # P_n(w) = sum_k c_{n,k} w^k obeys |P_n(w)| <= C_f e^{C_phi} (|w|^n + rho^-n)
    rho = mp.mpf(1) / 2
    cf = max(abs(mp.mpc(x)) * rho**j for j, x in enumerate(b)) * len(b)
    cphi = sum(abs(mp.mpc(x)) * rho ** (j + 1) for j, x in enumerate(a))
    t = cnk_table([mp.mpc(x) for x in b], [mp.mpc(x) for x in a], 6)
    w = mp.mpc(w)
    for n in range(7):
        pn = sum(t[n, k] * w**k for k in range(n + 1))
        assert abs(pn) <= cf * mp.exp(cphi * max(1, abs(w) / rho)) * (abs(w) ** n + rho ** -n) + 1e-12


def test_coefficients_over_series_ring_match_numeric():
    from naive_integral.series import PuiseuxSeries
    P = 30
    mp.mp.dps = P
    a3 = PuiseuxSeries.from_terms({0: 1, 1: 2}, 3, P)
    b0 = PuiseuxSeries.from_terms({0: 1}, 3, P)
    one = PuiseuxSeries.constant(1, 3, P)
    t = cnk_table([b0], [a3], 2)
    S = perron_coefficients(t, one, one, 2)
    tau = mp.mpf("0.1")
    tn = cnk_table([mp.mpc(1)], [a3(tau)], 2)
    Sn = perron_coefficients(tn, mp.mpc(1), mp.mpc(1), 2)
    assert abs(S[1].evaluate(tau) - Sn[1]) < mp.mpf(10) ** -25


def test_condition_c_quadratic():
    rep = verify_condition_c(lambda x: x * x, 0.1, (-1, 1))
    assert rep.passed
    assert abs(rep.minimum - mp.mpf("0.01")) < 1e-12


def test_condition_c_reports_failure():
    rep = verify_condition_c(lambda x: x * x - 1, 0.1, (-1, 1))
    assert not rep.passed and rep.minimum < 0


def test_minorant_values():
    assert abs(minorant_q1(mp.mpf(1) / 2) - mp.mpf("0.01068")) < 5e-6
    assert abs(minorant_q2(mp.mpf(11) / 40) - mp.mpf("0.0154654")) < 5e-8
    assert minorant_q1(mp.mpf(1) / 2) > 0 and minorant_q2(mp.mpf(11) / 40) > 0
