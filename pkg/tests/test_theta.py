import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from naive_integral.contour import eval_J0_realline
from naive_integral.errors import DomainError
from naive_integral.theta import (eval_J_reference, gf_weights, psi, psi0, psi_value, tau_of_t,
                                  z0_expected_count, z0_leading, z0_phase, z0_sign_changes)

P = 50


@pytest.mark.parametrize("k", range(20))
def test_psi_two_series_agree(k):
    x = mp.mpf("0.02") * mp.power(250, mp.mpf(k) / 19)
    r = psi(x, P)
    assert r.agreement < mp.mpf(10) ** -(P - 5)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.05, max_value=4.0))
def test_psi_identity_property(x):
    assert psi(x, 30).agreement < mp.mpf(10) ** -25


def test_psi_limits():
    mp.mp.dps = 40
    # large x: the first theta term dominates
    x = mp.mpf(6)
    assert abs(psi_value(x, 40) / (2 * mp.pi * mp.exp(-mp.pi * x)) - 1) < 1e-7
    # small x: the first dual term dominates
    x = mp.mpf("0.05")
    lead = (mp.pi - 2 * x) / (2 * x ** (mp.mpf(5) / 2)) * mp.exp(-mp.pi / (4 * x))
    assert abs(psi_value(x, 40) / lead - 1) < 20 * mp.exp(-2 * mp.pi / x)
    # psi0 shares both limits, with relative errors of order x and 1/x
    for x in (mp.mpf(60), mp.mpf(1) / 60):
        assert abs(psi0(x, 40).value / psi_value(x, 40) - 1) < 3 / max(x, 1 / x)


def test_psi_rejects_nonpositive():
    for bad in (0, -1, 1j):
        with pytest.raises(DomainError):
            psi(bad)


def test_gf_weights_rebuild_integrand():
    mp.mp.dps = 40
    x, t = mp.mpf("0.7"), mp.mpf(300)
    g, f = gf_weights(x, t, 40)
    direct = psi_value(x, 40) * mp.power(1 - 1j * x, mp.mpf(1) / 4 + 1j * t / 2)
    assert abs(g * mp.expj(f) - direct) < mp.mpf(10) ** -30 * abs(direct)


def test_tau_of_t():
    with mp.workdps(80):
        t = 8 * mp.pi
    assert abs(tau_of_t(t, 50) - mp.mpf(1) / 2) < mp.mpf(10) ** -60
    with pytest.raises(DomainError):
        tau_of_t(-3)


def test_reference_with_psi0_is_j0():
    t = 400
    tau = tau_of_t(t, 30)
    a = eval_J_reference(t, 30, weight="psi0")
    b = eval_J0_realline(tau, 30)
    with mp.workdps(40):
        assert abs(a.value.value - b.value.value) < mp.mpf(10) ** -25 * abs(b.value.value)


def test_reference_at_t100():
    r = eval_J_reference(100, 30)
    with mp.workdps(40):
        expect = mp.mpc("-55.835233869723335", "-79.943149354805331")
        assert abs(r.value.value - expect) < 1e-12


def test_reference_budget():
    with pytest.raises(DomainError):
        eval_J_reference(5000, 30)
    with pytest.raises(ValueError):
        eval_J_reference(100, 30, weight="other")


def test_z0_counts():
    n = z0_sign_changes(1000, 1100, 20000)
    expected = z0_expected_count(1000, 1100)
    assert abs(n - expected) <= 1


def test_z0_phase_and_domain():
    t = mp.mpf(1000)
    assert abs(z0_phase(t) - (t / 2 * mp.log(t / (2 * mp.pi)) - t / 2 - mp.pi / 8)) < 1e-10
    assert abs(z0_leading(t)) < 2 / mp.sqrt(mp.pi) + 1
    with pytest.raises(DomainError):
        z0_leading(1)
    with pytest.raises(ValueError):
        z0_sign_changes(1100, 1000)
