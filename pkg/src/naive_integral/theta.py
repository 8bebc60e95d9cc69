"""The theta-derived weight, its elementary stand-in, and the leading form of Z0.

``psi(x) = -2 pi sum_{n>=1} (-1)^n n^2 e^{-pi n^2 x}`` has a dual form from
the theta transformation,

    psi(x) = (2 x^{5/2})^{-1} sum_{n>=0} ((2n+1)^2 pi - 2x) e^{-pi (2n+1)^2 / (4x)},

the first converging fast for large ``x`` and the second for small ``x``.
Replacing ``psi`` by ``psi0(x) = 2 pi (1 + x^{-5/2}/4) e^{-pi x - pi/(4x)}``
keeps the behaviour at both ends and turns the reference integral into
``J0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .bignum import DEFAULT_PREC, BigComplex, check_prec
from .contour import _log_abs_weight0, _weight0_rate, realline_integral
from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureResult

MAX_TERMS = 10000


def _check_x(x):
    x = mp.mpmathify(x)
    if mp.im(x) != 0 or x <= 0:
        raise DomainError(f"x must be a positive real number, got {x}")
    return mp.re(x)


def _theta_sum(x, cutoff):
    total, n = mp.mpf(0), 1
    while True:
        term = n * n * mp.exp(-mp.pi * n * n * x)
        total += term if n % 2 else -term
        if abs(term) < cutoff * max(abs(total), 1):
            return 2 * mp.pi * total, n
        n += 1
        if n > MAX_TERMS:
            raise ConvergenceError("theta series did not converge")


def _dual_sum(x, cutoff):
    total, n = mp.mpf(0), 0
    scale = 1 / (2 * x ** (mp.mpf(5) / 2))
    while True:
        m = (2 * n + 1) ** 2
        term = (m * mp.pi - 2 * x) * mp.exp(-mp.pi * m / (4 * x))
        total += term
        if abs(term) < cutoff * max(abs(total), 1):
            return scale * total, n + 1
        n += 1
        if n > MAX_TERMS:
            raise ConvergenceError("dual theta series did not converge")


@dataclass(frozen=True)
class PsiEval:
    x: mp.mpf
    value_theta: BigComplex
    value_dual: BigComplex
    terms_used: tuple

    @property
    def agreement(self) -> mp.mpf:
        a, b = self.value_theta.value, self.value_dual.value
        return abs(a - b) / max(1, abs(a))

    def to_json(self):
        return {"x": mp.nstr(self.x, 20), "theta": self.value_theta.to_json(),
                "dual": self.value_dual.to_json(), "terms_used": list(self.terms_used)}


def psi(x, precision: int = DEFAULT_PREC) -> PsiEval:
    """Both series for ``psi(x)``, each summed until the next term is negligible."""
    check_prec(precision)
    x = _check_x(x)
    # the alternating sum cancels most of its leading digits for small x
    lost = max(0, int(math.log10(1 + 1 / float(x))) * 2 + 1 + int(math.pi / (4 * float(x)) / math.log(10)))
    with mp.workdps(precision + 10 + lost):
        cutoff = mp.mpf(10) ** (-(precision + 10 + lost))
        a, na = _theta_sum(x, cutoff)
        b, nb = _dual_sum(x, cutoff)
        return PsiEval(x, BigComplex.of(a, precision), BigComplex.of(b, precision), (na, nb))


def psi_value(x, precision: int = DEFAULT_PREC) -> mp.mpf:
    """``psi(x)`` from whichever series converges faster at ``x``."""
    x = _check_x(x)
    with mp.workdps(precision + 10):
        cutoff = mp.mpf(10) ** (-(precision + 10))
        if x >= 1:
            return _theta_sum(x, cutoff)[0]
        return _dual_sum(x, cutoff)[0]


def psi0(x, precision: int = DEFAULT_PREC) -> BigComplex:
    """``2 pi (1 + x^{-5/2}/4) e^{-pi x - pi/(4x)}``."""
    x = _check_x(x)
    with mp.workdps(precision + 5):
        v = 2 * mp.pi * (1 + x ** (-mp.mpf(5) / 2) / 4) * mp.exp(-mp.pi * x - mp.pi / (4 * x))
        return BigComplex.of(v, precision)


def gf_weights(x, t, precision: int = DEFAULT_PREC):
    """``(g(x, t), f(x, t))``: the real modulus and phase of the reference integrand."""
    x = _check_x(x)
    t = mp.mpmathify(t)
    with mp.workdps(precision + 10):
        at = mp.atan(x)
        g = (1 + x * x) ** (mp.mpf(1) / 8) * mp.exp(t / 2 * at) * psi_value(x, precision)
        f = t / 4 * mp.log(1 + x * x) - at / 4
    return +g, +f


def tau_of_t(t, precision: int = DEFAULT_PREC):
    """``sqrt(2 pi / t)`` at ``precision`` + 20 digits."""
    t = mp.mpmathify(t)
    if mp.im(t) != 0 or t <= 0:
        raise DomainError(f"t must be a positive real number, got {t}")
    with mp.workdps(precision + 20):
        return mp.sqrt(2 * mp.pi / mp.re(t))


T_REFERENCE_MAX = 2000


def eval_J_reference(t, precision: int = DEFAULT_PREC, *, t_max=T_REFERENCE_MAX,
                     weight: str = "psi") -> QuadratureResult:
    """``int_0^oo g(x,t) e^{i f(x,t)} dx`` along the real axis.

    ``g e^{if}`` equals ``psi(x) (1 - ix)^{1/4 + it/2}``, so the same marching
    quadrature as for ``J0`` applies; ``weight="psi0"`` reproduces ``J0``.
    The float envelope of ``psi0`` is widened by a factor 5, which bounds
    the ratio ``psi/psi0`` on the whole axis.
    """
    check_prec(precision)
    if mp.mpf(t) > t_max:
        raise DomainError(f"t = {t} exceeds the direct quadrature budget t <= {t_max}")
    tau = tau_of_t(t, precision)
    if weight == "psi":
        def w(x):
            return psi_value(x, precision + 30)

        def log_w(x):
            return _log_abs_weight0(x) + math.log(5)
    elif weight == "psi0":
        def w(x):
            return 2 * mp.pi * (1 + x ** (-mp.mpf(5) / 2) / 4) * mp.exp(-mp.pi * x - mp.pi / (4 * x))

        log_w = _log_abs_weight0
    else:
        raise ValueError("weight must be 'psi' or 'psi0'")
    res, _ = realline_integral(w, log_w, _weight0_rate, tau, precision)
    return res


# -- Z0 ---------------------------------------------------------------------------

def _check_t(t):
    t = mp.mpmathify(t)
    if mp.im(t) != 0 or t <= 2 * mp.pi:
        raise DomainError("the leading form of Z0 needs t > 2 pi")
    return mp.re(t)


def z0_phase(t):
    """Phase of the first term: ``t/2 log(t/2pi) - t/2 - pi/8``."""
    t = _check_t(t)
    return t / 2 * mp.log(t / (2 * mp.pi)) - t / 2 - mp.pi / 8


def z0_leading(t):
    """Real part of the two leading terms of ``Z0(t)``."""
    t = _check_t(t)
    first = 2 / mp.sqrt(mp.pi) * mp.expj(z0_phase(t))
    second = 2 / (2 * mp.pi * t) ** (mp.mpf(1) / 4) * mp.expjpi(mp.sqrt(t / (2 * mp.pi)))
    return mp.re(first + second)


def z0_sign_changes(a, b, n: int = 20000):
    """Sign changes of :func:`z0_leading` on an ``n``-interval grid of ``[a, b]``."""
    a, b = _check_t(a), _check_t(b)
    if b <= a or n < 1:
        raise ValueError("need a < b and n >= 1")
    count, prev = 0, None
    for k in range(n + 1):
        v = z0_leading(a + (b - a) * k / n)
        if prev is not None and v * prev < 0:
            count += 1
        if v != 0:
            prev = v
    return count


def z0_expected_count(a, b):
    """Increase of the dominant phase over ``[a, b]`` divided by ``pi``.

    The first term carries the zeros, one per half-turn of its phase.
    """
    return (z0_phase(b) - z0_phase(a)) / mp.pi
