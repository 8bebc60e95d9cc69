import mpmath as mp
import pytest

from naive_integral.errors import DomainError
from naive_integral.reference import RAMIFICATION, value
from naive_integral.saddles import (P, ramification_points, saddle_series,
                                    scaled_saddle_series, solve_saddles, verify_localizations)


def hp(x):
    with mp.workdps(80):
        return mp.mpf(x)


def test_roots_have_tiny_residuals():
    s = solve_saddles(hp("0.1"), 50)
    assert s.labeled
    assert all(r < mp.mpf(10) ** -40 for r in s.residuals.values())
    assert abs(s.q2.value - 0.05j) < 0.01


def test_q1_against_four_term_expansion():
    tau = hp("0.01")
    q1 = solve_saddles(tau, 50).q1.value
    approx = 1j / tau**2 + 1 / (4 * mp.pi) - 1j - 1j * tau**2 / 4
    # the next term is of order tau^4
    assert abs(q1 - approx) < 10 * tau**4


def test_outside_range_is_unlabeled_and_nonpositive_rejected():
    s = solve_saddles(hp("0.3"), 40)
    assert not s.labeled and len(s.roots()) == 3
    with pytest.raises(DomainError):
        solve_saddles(0, 40)
    with pytest.raises(DomainError):
        solve_saddles(-0.1, 40)


def test_q2_series_printed_coefficients():
    mp.mp.dps = 40
    s = saddle_series("q2", 10, 40)
    pi = mp.pi
    expected = {1: 0.5j, 2: 0.125j, 3: (-4 + 17j * pi) / (64 * pi), 4: -1 / (32 * pi) + 0.25j}
    for e, c in expected.items():
        assert abs(s[e] - c) < mp.mpf(10) ** -30


def test_q3_mirrors_q2_in_first_terms():
    s = saddle_series("q3", 6, 40)
    assert abs(s[1] + 0.5j) < 1e-30 and abs(s[2] - 0.125j) < 1e-30


def test_q1_series_matches_root():
    tau = hp("0.05")
    s = saddle_series("q1", 12, 40)
    q1 = solve_saddles(tau, 40).q1.value
    assert abs(s(tau) - q1) < 10 * tau**6


def test_scaled_series_start_at_one():
    for w in ("q1", "q2"):
        Q = scaled_saddle_series(w, 8, 40)
        assert abs(Q[0] - 1) < 1e-30


@pytest.mark.parametrize("tau", ["0.25", "0.2", "0.01"])
def test_localization_checks_pass(tau):
    rep = verify_localizations(hp(tau), 40)
    assert rep.passed, rep.to_json()


def test_localization_q2_ratio_small_tau():
    tau = hp("0.01")
    rep = verify_localizations(tau, 40)
    d = {c.name: c.measured for c in rep.checks}
    # |q2 - i tau/2| is about tau^2/8
    assert abs(d["q2_disc"] / tau**2 - mp.mpf(1) / 8) < 0.01


def test_localization_rejects_out_of_range():
    with pytest.raises(DomainError):
        verify_localizations(hp("0.3"), 40)


def test_ramification_points():
    r = ramification_points(50)
    assert len(r.roots) == 6
    for k, rho in enumerate(r.rho):
        assert abs(rho.value - value(RAMIFICATION[k])) < 1e-6
    assert all(res < mp.mpf(10) ** -40 for res in r.residuals)


def test_ramification_collides_saddles():
    with mp.workdps(60):
        rho = ramification_points(50).rho[2].value
        c2 = P(1, rho) - P(0, rho) - 1 + mp.mpf(1) / 4
        roots = mp.polyroots([1, c2, -mp.mpf(1) / 4, -0.25j], maxsteps=200, extraprec=200)
        assert all(abs(P(z, rho)) < mp.mpf(10) ** -40 for z in roots)
        gaps = sorted(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])
    assert gaps[0] < 1e-10
