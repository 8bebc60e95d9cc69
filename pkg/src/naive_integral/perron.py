"""Saddle-point expansion of ``int f(x) exp(-phi(x)/h) dx`` with parameter-dependent data.

With ``phi(x) = a2 x^2 + sum_{n>=3} a_n x^n`` and ``f(x) = sum b_n x^n`` the
integral over a segment around 0 behaves like

    sum_m ( sum_{k=0}^{2m} Gamma(m+k+1/2) c_{2m,k} / a2^{m+k+1/2} ) h^{m+1/2},

where ``c_{n,k}`` are the coefficients of ``z^n w^k`` in
``f(z) exp(-w sum_{n>=3} a_n z^{n-2})``.  The substitution ``w = x^2/h``
turns ``c_{n,k} z^n w^k`` into ``x^{n+2k}/h^k``; its Gaussian moment is
what produces the power ``a2^{m+k+1/2}``.

The coefficient routines only add and multiply, so ``a_n``, ``b_n`` may be
plain numbers (the expansion at one fixed ``h``) or
:class:`~naive_integral.series.PuiseuxSeries` (coefficients as series).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .bignum import BigComplex
from .errors import DomainError


@dataclass(frozen=True)
class CnkTable:
    N: int
    c: tuple   # c[n][k] for 0 <= k <= n <= N

    def __post_init__(self):
        for n, row in enumerate(self.c):
            if len(row) != n + 1:
                raise ValueError("c_{n,k} table must be triangular with k <= n")

    def __getitem__(self, nk):
        n, k = nk
        if k > n:
            return 0
        return self.c[n][k]


def _zero_like(x):
    return x * 0


def cnk_table(b, a, N: int) -> CnkTable:
    """Coefficients of ``(sum b_n z^n) exp(-w sum_{n>=3} a_n z^{n-2})`` up to ``z^N``.

    ``a`` lists ``a_3, a_4, ...``; missing entries count as zero, as do
    missing ``b_n``.
    """
    if not b:
        raise ValueError("b needs at least the constant coefficient")
    zero = _zero_like(b[0])
    bz = [b[n] if n < len(b) else zero for n in range(N + 1)]
    # g(z) = sum_{n>=3} a_n z^{n-2} = a_3 z + a_4 z^2 + ...
    g = [zero] + [a[j - 1] if j - 1 < len(a) else zero for j in range(1, N + 1)]
    # e[n][k] = coefficient of z^n w^k in exp(-w g) = (-1)^k [z^n] g^k / k!
    e = [[zero] * (n + 1) for n in range(N + 1)]
    e[0][0] = zero + 1
    power = [zero + 1] + [zero] * N    # g^0
    for k in range(1, N + 1):
        nxt = [zero] * (N + 1)
        for i in range(k - 1, N + 1):
            if _is_zero(power[i]):
                continue
            for j in range(1, N + 1 - i):
                if not _is_zero(g[j]):
                    nxt[i + j] = nxt[i + j] + power[i] * g[j]
        power = nxt
        scale = mp.mpf((-1) ** k) / mp.factorial(k)
        for n in range(k, N + 1):
            e[n][k] = power[n] * scale
    c = []
    for n in range(N + 1):
        row = []
        for k in range(n + 1):
            s = zero
            for j in range(0, n - k + 1):
                if not _is_zero(bz[j]) and not _is_zero(e[n - j][k]):
                    s = s + bz[j] * e[n - j][k]
            row.append(s)
        c.append(tuple(row))
    return CnkTable(N, tuple(c))


def _is_zero(x):
    if hasattr(x, "coeffs"):
        return all(c == 0 for c in x.coeffs)
    return x == 0


def perron_coefficients(table: CnkTable, a2_inv_sqrt, a2_inv, M: int):
    """``S_m = sum_k Gamma(m+k+1/2) c_{2m,k} a2^{-(m+k+1/2)}`` for ``m < M``.

    ``a2_inv_sqrt`` and ``a2_inv`` are ``a2^{-1/2}`` and ``a2^{-1}`` in the
    coefficient ring, so the sum needs only ring operations.
    """
    if 2 * (M - 1) > table.N:
        raise ValueError(f"table of order {table.N} is too short for {M} terms")
    powers = [a2_inv_sqrt]
    for _ in range(1, 3 * M):
        powers.append(powers[-1] * a2_inv)
    out = []
    for m in range(M):
        s = None
        for k in range(2 * m + 1):
            c = table[2 * m, k]
            if _is_zero(c):
                continue
            term = (c * powers[m + k]) * mp.gamma(m + k + mp.mpf(1) / 2)
            s = term if s is None else s + term
        out.append(s if s is not None else _zero_like(a2_inv_sqrt))
    return out


@dataclass(frozen=True)
class AsymptoticResult:
    terms: tuple                   # ((exponent, BigComplex), ...)
    truncation_exponent: Fraction
    value_at: tuple | None         # (tau, BigComplex)
    remainder_estimate: mp.mpf

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("asymptotic terms must have strictly increasing exponents")

    @property
    def value(self) -> BigComplex:
        return self.value_at[1]

    def to_json(self):
        return {
            "terms": [[str(e), c.to_json()] for e, c in self.terms],
            "truncation_exponent": str(self.truncation_exponent),
            "tau": mp.nstr(self.value_at[0], 20) if self.value_at else None,
            "value": self.value_at[1].to_json() if self.value_at else None,
            "remainder_estimate": mp.nstr(self.remainder_estimate, 6),
        }


def _check_a2(a2):
    if mp.re(a2) <= 0:
        raise DomainError("the quadratic coefficient a2 must have positive real part")


def perron_sum(table: CnkTable, a2, tau, N: int, precision: int = 50) -> AsymptoticResult:
    """Numeric expansion ``sum_{m<N} S_m tau^{m+1/2}`` at one value of ``tau``.

    The remainder estimate is the size of the first omitted term when the
    table is long enough to form it, else zero.
    """
    with mp.workdps(precision + 10):
        a2 = mp.mpmathify(a2)
        tau = mp.mpmathify(tau)
        _check_a2(a2)
        M = min(N + 1, table.N // 2 + 1)
        S = perron_coefficients(table, a2 ** (-mp.mpf(1) / 2), 1 / a2, M)
        terms = tuple((Fraction(2 * m + 1, 2), BigComplex.of(S[m], precision)) for m in range(N))
        value = sum((S[m] * tau ** (m + mp.mpf(1) / 2) for m in range(N)), mp.mpc(0))
        rem = abs(S[N] * tau ** (N + mp.mpf(1) / 2)) if M > N else mp.mpf(0)
    return AsymptoticResult(terms, Fraction(2 * N + 1, 2), (tau, BigComplex.of(value, precision)), rem)


def gaussian_moment(n: int, a2, h):
    """``int_R x^n exp(-a2 x^2 / h) dx``: ``Gamma((n+1)/2) (h/a2)^{(n+1)/2}`` for even ``n``."""
    a2 = mp.mpmathify(a2)
    _check_a2(a2)
    if n % 2:
        return mp.mpf(0)
    s = mp.mpf(n + 1) / 2
    return mp.gamma(s) * (h / a2) ** s


# -- condition (c) --------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    rho: mp.mpf
    segment: tuple
    minimum: mp.mpf
    argmin: mp.mpf
    passed: bool

    def to_json(self):
        return {"rho": mp.nstr(self.rho, 10), "segment": [mp.nstr(s, 10) for s in self.segment],
                "minimum": mp.nstr(self.minimum, 10), "argmin": mp.nstr(self.argmin, 10),
                "passed": self.passed}


def verify_condition_c(phase, rho, segment, step=1e-3) -> ConditionReport:
    """Empirical ``min Re phase(x)`` over ``segment`` minus ``(-rho, rho)``.

    A grid of spacing ``step`` locates the minimum; a golden-section search
    on the bracketing cells refines it.  A non-positive minimum is reported
    as a failed check rather than raised.
    """
    a, b = (mp.mpf(s) for s in segment)
    rho = mp.mpf(rho)
    if rho <= 0:
        raise DomainError("rho must be positive")
    pieces = [(a, min(-rho, b)), (max(rho, a), b)]
    best = (mp.inf, None)

    def f(x):
        return mp.re(phase(x))

    for lo, hi in pieces:
        if hi <= lo:
            continue
        n = max(2, int(mp.ceil((hi - lo) / step)))
        xs = [lo + (hi - lo) * j / n for j in range(n + 1)]
        vals = [f(x) for x in xs]
        j = min(range(n + 1), key=vals.__getitem__)
        l, r = xs[max(j - 1, 0)], xs[min(j + 1, n)]
        # golden-section refinement inside the bracketing cells
        g = (mp.sqrt(5) - 1) / 2
        for _ in range(60):
            m1, m2 = r - g * (r - l), l + g * (r - l)
            if f(m1) < f(m2):
                r = m2
            else:
                l = m1
        cand = [(vals[j], xs[j]), (f((l + r) / 2), (l + r) / 2), (vals[0], xs[0]), (vals[-1], xs[-1])]
        v, x = min(cand, key=lambda p: p[0])
        if v < best[0]:
            best = (v, x)
    return ConditionReport(rho, (a, b), best[0], best[1], bool(best[0] > 0))


def minorant_q1(x):
    """Lower bound for the real part of the rescaled phase at ``q1``."""
    x = mp.mpmathify(x)
    return mp.pi * x * (137 * x + 144) / 128 + mp.pi * mp.log(1 - 9 * x / 8)


def minorant_q2(x):
    """Lower bound for the real part of the rescaled phase at ``q2``, valid for ``x < 5/11``."""
    x = mp.mpmathify(x)
    r2 = mp.sqrt(2)
    pi = mp.pi
    return (9 * pi * x**2 / 5 - 2 * pi * r2 * x**3 - 4 * pi * x**4 / 5 - 8 * pi * r2 * x**5
            - 144 * pi * x**6 / 5 - pi * 19487171 * x**7 / (31250 * (5 - 11 * x)))
