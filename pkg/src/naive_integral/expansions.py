"""Saddle-point asymptotics of the two contour pieces that carry ``J_0``.

Around ``q1`` the path is ``z = q1 + eps tau^-2 x`` and the small parameter
of the Gaussian is ``h = tau^2``; around ``q2`` it is ``z = q2 + eps^3 tau x``
with ``h = tau``.  ``eps = exp(i pi/4)``.  In both cases the local phase and
amplitude coefficients are fed to :mod:`naive_integral.perron`.

Two routes are provided.  The numeric drivers :func:`j4_asymptotic` and
:func:`j2_asymptotic` take Taylor coefficients at the numerically located
saddle.  The series functions (:func:`an_coefficients_q1`, :func:`e_series`,
:func:`f_series`, ...) regenerate the same quantities as power series in
``tau``, starting from the saddle series.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .bignum import DEFAULT_PREC, BigComplex, check_prec
from .contour import _check_range, _tau, dphi_n, log_upper, phi
from .errors import DomainError
from .perron import AsymptoticResult, cnk_table, perron_coefficients
from .saddles import scaled_saddle_series, solve_saddles
from .series import PuiseuxSeries, series_exp, series_log, series_pow

EPS = mp.expjpi(mp.mpf(1) / 4)
SADDLES = ("q1", "q2")


def _eps():
    return mp.expjpi(mp.mpf(1) / 4)


def _saddle(which):
    if which not in SADDLES:
        raise ValueError(f"saddle must be one of {SADDLES}, got {which!r}")


def _grading(which, tau):
    """``(step, h)``: the path direction times scale, and the Gaussian parameter."""
    e = _eps()
    if which == "q1":
        return e / tau**2, tau**2
    return e**3 * tau, tau


# -- numeric local data -----------------------------------------------------------

def local_phase(which, q, tau, N):
    """``[a2, a3, ..., a_{N+2}]`` with ``phi(q + step x) - phi(q) = -(a2 x^2 + ...)/h``."""
    step, h = _grading(which, tau)
    return [-h * dphi_n(q, tau, n) * step**n / mp.factorial(n) for n in range(2, N + 3)]


def local_amplitude(which, q, tau, N):
    """Taylor coefficients ``b_0..b_N`` of ``1 + z^(-5/2)/4`` at ``z = q + step x``."""
    step, _ = _grading(which, tau)
    L = log_upper(q)
    out = []
    for n in range(N + 1):
        alpha = -mp.mpf(5) / 2 - n
        out.append(mp.binomial(-mp.mpf(5) / 2, n) * mp.exp(alpha * L) * step**n / 4)
    out[0] += 1
    return out


def a_numeric(which, n, tau, q=None, precision=DEFAULT_PREC):
    """``A_n`` at a numeric saddle, normalized to tend to 1 as ``tau -> 0``."""
    _saddle(which)
    tau = _tau(tau)
    with mp.workdps(precision + 10):
        if q is None:
            q = getattr(solve_saddles(tau, precision + 10), which).value
        d = dphi_n(q, tau, n)
        if which == "q1":
            return d / (mp.pi * (1j * tau**2) ** (n - 1) * mp.factorial(n - 1))
        return 4 * d / (mp.pi * 2 ** (n + 1) * (1j / tau) ** (n + 1) * mp.factorial(n))


# -- drivers ---------------------------------------------------------------------

def _driver(which, tau, order, amplitude, precision):
    tau = _tau(tau)
    _check_range(tau)
    if order < 1:
        raise ValueError("order must be at least 1")
    check_prec(precision)
    with mp.workdps(precision + 20):
        # tau is recomputed here so that a float argument is not the limiting factor
        q = getattr(solve_saddles(tau, precision + 20), which).value
        step, h = _grading(which, tau)
        N = 2 * order    # c_{2m,k} for m <= order, one beyond the kept terms
        a = local_phase(which, q, tau, N)
        if mp.re(a[0]) <= 0:
            raise DomainError("local quadratic coefficient lost its positive real part")
        b = local_amplitude(which, q, tau, N) if amplitude else [mp.mpc(1)]
        table = cnk_table(b, a[1:], N)
        S = perron_coefficients(table, a[0] ** (-mp.mpf(1) / 2), 1 / a[0], order + 1)
        pre = 2 * mp.pi * step * mp.exp(phi(q, tau))
        parts = [pre * S[m] * h ** (m + mp.mpf(1) / 2) for m in range(order + 1)]
        value = mp.fsum(parts[:order])
        rem = abs(parts[order])
        if which == "q1" and not amplitude:
            # the dropped z^(-5/2) part of the amplitude is of relative size |q1|^(-5/2)/4
            rem = max(rem, abs(value) * abs(mp.exp(-mp.mpf(5) / 2 * log_upper(q))) / 4)
        # J ~ sum_m coefficient_m tau^(e_m) with e_m the leading tau-power of term m
        lead = Fraction(-3, 2) if which == "q1" else Fraction(-1)
        inc = Fraction(2) if which == "q1" else Fraction(1)
        terms = []
        for m in range(order):
            e = lead + m * inc
            terms.append((e, BigComplex.of(parts[m] / tau ** (mp.mpf(e.numerator) / e.denominator), precision)))
    return AsymptoticResult(tuple(terms), lead + order * inc,
                            (tau, BigComplex.of(value, precision)), rem)


def j4_asymptotic(tau, order: int = 3, *, amplitude: bool = False,
                  precision: int = DEFAULT_PREC) -> AsymptoticResult:
    """Saddle-point expansion of the piece through ``q1`` with ``order`` terms.

    Term ``m`` is ``tau^(2m)`` smaller than the leading ``tau^(-3/2)``.  By
    default the amplitude is taken as 1 (its ``z^(-5/2)`` part is of size
    ``tau^5``); ``amplitude=True`` keeps it.
    """
    return _driver("q1", tau, order, amplitude, precision)


def j2_asymptotic(tau, order: int = 3, *, precision: int = DEFAULT_PREC) -> AsymptoticResult:
    """Saddle-point expansion of the piece through ``q2`` with ``order`` terms.

    Term ``m`` is at most ``tau^m`` smaller than the leading ``tau^(-1)``;
    with the saddle located exactly, terms from the third on come out
    smaller still, so ``remainder_estimate`` is the better error guide.
    """
    return _driver("q2", tau, order, True, precision)


# -- series route -----------------------------------------------------------------

def _trunc(order):
    if order < 1:
        raise ValueError("order must be positive")
    return Fraction(order, 2)


def _Q(which, order, precision):
    return scaled_saddle_series(which, order + 4, precision).truncate(_trunc(order))


def _const(c, order, precision):
    return PuiseuxSeries.constant(c, _trunc(order), precision)


def _mono(c, e, order, precision):
    return PuiseuxSeries.monomial(c, e, _trunc(order), precision)


def an_coefficients_q1(n: int, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """``A_n`` at ``q1`` as a series in ``tau`` up to ``tau^(order/2)``."""
    if n < 2:
        raise ValueError("A_n is defined for n >= 2")
    with mp.workdps(precision + 10):
        Q = _Q("q1", order, precision)
        t2 = _mono(1, 2, order, precision)
        first = series_pow(Q + t2, -n) * (_const(1, order, precision)
                                         + _mono(1 / (4j * mp.pi), 2, order, precision))
        second = series_pow(Q, -(n + 1)) * _mono(mp.mpf(n) / 4, 4, order, precision)
        return (first - second).truncate(_trunc(order))


def an_coefficients_q2(n: int, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """``A_n`` at ``q2`` as a series in ``tau`` up to ``tau^(order/2)``."""
    if n < 2:
        raise ValueError("A_n is defined for n >= 2")
    with mp.workdps(precision + 10):
        Q = _Q("q2", order, precision)
        one = _const(1, order, precision)
        w = one + Q * _mono(mp.mpf(1) / 2, 1, order, precision)
        lead = (one + _mono(1 / (4j * mp.pi), 2, order, precision)) * _mono(
            1 / (mp.mpf(n) * 2 ** (n - 1)), n - 1, order, precision)
        return (series_pow(Q, -(n + 1)) - lead * series_pow(w, -n)).truncate(_trunc(order))


def bn_coefficients(saddle: str, n: int, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """Amplitude series ``B_n``: ``Q^(-5/2-n)``, plus ``4 (i tau/2)^(5/2)`` for ``B_0`` at ``q2``."""
    _saddle(saddle)
    if n < 0:
        raise ValueError("B_n is defined for n >= 0")
    with mp.workdps(precision + 10):
        B = series_pow(_Q(saddle, order, precision), Fraction(-5, 2) - n)
        if saddle == "q2" and n == 0:
            # 4 (i/2)^(5/2) with the principal power: -(1+i)/2
            B = B + _mono(4 * mp.expjpi(mp.mpf(5) / 4) / 2 ** (mp.mpf(5) / 2), Fraction(5, 2),
                          order, precision)
        return B.truncate(_trunc(order))


def phase_at_saddle_series(which: str, order: int = 12, precision: int = DEFAULT_PREC):
    """``phi(q, tau)`` minus its ``log tau`` terms, as a series from ``tau^-2`` or ``tau^-1``.

    At ``q1`` the removed part is ``-(1/2 + 2 pi i tau^-2) log tau``; at ``q2``
    nothing is removed.
    """
    _saddle(which)
    with mp.workdps(precision + 10):
        # tau^-2 in front of the logarithm costs two orders
        extra = order + 4
        Q = _Q(which, extra, precision)
        one = _const(1, extra, precision)
        c = _mono(mp.mpf(1) / 4, 0, extra, precision) + _mono(1j * mp.pi, -2, extra, precision)
        if which == "q1":
            t2 = _mono(1, 2, extra, precision)
            log_part = series_log(Q + t2)
            s = (_mono(-1j * mp.pi, -2, extra, precision) * Q
                 + _mono(1j * mp.pi / 4, 2, extra, precision) * series_pow(Q, -1)
                 + c * log_part)
        else:
            log_part = series_log(one + Q * _mono(mp.mpf(1) / 2, 1, extra, precision))
            s = (_mono(-1j * mp.pi / 2, 1, extra, precision) * Q
                 + _mono(1j * mp.pi / 2, -1, extra, precision) * series_pow(Q, -1)
                 + c * log_part)
        return s.truncate(_trunc(order))


def e_series(which: str, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """``E(tau)``: exponential of the positive-power part of the phase at the saddle."""
    s = phase_at_saddle_series(which, order, precision)
    with mp.workdps(precision + 10):
        pos = {e: c for e, c in s.terms() if e > 0}
        return series_exp(PuiseuxSeries.from_terms(pos, s.trunc_order, precision))


def f_series(which: str, order: int = 8, precision: int = DEFAULT_PREC, *,
             amplitude: bool | None = None) -> PuiseuxSeries:
    """Correction factor ``F(tau) = 1 + ...`` of the expansion at ``q1`` or ``q2``.

    Built by running the coefficient engine over series-valued ``a_n`` and
    ``b_n``.  At ``q1`` the amplitude defaults to 1, matching the leading
    form; at ``q2`` the amplitude series is always included.
    """
    _saddle(which)
    if amplitude is None:
        amplitude = which == "q2"
    T = _trunc(order)
    with mp.workdps(precision + 10):
        pi = mp.pi
        e = _eps()
        if which == "q1":
            M = int(T // 2) + 1
        else:
            M = int(mp.ceil(T))
        N = max(2 * (M - 1), 1)
        A = {n: (an_coefficients_q1 if which == "q1" else an_coefficients_q2)(n, order, precision)
             for n in range(2, N + 3)}
        if which == "q1":
            a2_scale = pi / 2
            a = [A[n].scale(1j * pi * e ** (3 * n) / n) for n in range(3, N + 3)]
            if amplitude:
                b = [bn_coefficients("q1", n, order, precision)
                     .scale(e**3 * mp.binomial(-mp.mpf(5) / 2, n) * e ** (-n) / 4).shift(5)
                     for n in range(N + 1)]
                b = [x.truncate(T) for x in b]
                b[0] = b[0] + _const(1, order, precision)
            else:
                b = [_const(1, order, precision)]
        else:
            a2_scale = 2 * pi
            a = [A[n].scale(-1j * pi / 2 * 2**n * e ** (-3 * n)) for n in range(3, N + 3)]
            b = [bn_coefficients("q2", n, order, precision).scale(
                mp.binomial(-mp.mpf(5) / 2, n) * (2 * e) ** n) for n in range(N + 1)]
        table = cnk_table(b, a, N)
        inv_sqrt = series_pow(A[2], Fraction(-1, 2)).scale(1 / mp.sqrt(a2_scale))
        inv = series_pow(A[2], -1).scale(1 / a2_scale)
        S = perron_coefficients(table, inv_sqrt, inv, M)
        S0_inv = series_pow(S[0], -1)
        step = 2 if which == "q1" else 1
        F = _const(0, order, precision)
        for m in range(M):
            F = F + (S[m] * S0_inv).shift(step * m).truncate(T)
        return F.truncate(T)


# -- condition (c) on the two applications -------------------------------------------

WINDOWS = {"q1": (-mp.mpf(1) / 2, mp.mpf(1) / 2), "q2": (-mp.mpf(1) / 4, mp.mpf(1) / 4)}


def rescaled_phase(which: str, tau, precision: int = DEFAULT_PREC):
    """``x -> -h (phi(q + step x) - phi(q))``, the function whose real part must stay positive."""
    _saddle(which)
    tau = _tau(tau)
    _check_range(tau)
    with mp.workdps(precision + 10):
        q = getattr(solve_saddles(tau, precision + 10), which).value
        step, h = _grading(which, tau)
        p0 = phi(q, tau)

    def psi(x):
        with mp.workdps(precision + 10):
            return -h * (phi(q + step * mp.mpf(x), tau) - p0)

    return psi


def check_condition_c(which: str, tau, rho, precision: int = 30, step=1e-3):
    """Empirical condition (c) for the expansion at ``q1`` or ``q2`` over its window."""
    from .perron import verify_condition_c
    return verify_condition_c(rescaled_phase(which, tau, precision), rho, WINDOWS[which], step)
