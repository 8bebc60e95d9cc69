"""Truncated Puiseux series in ``tau**(1/2)`` with arbitrary precision coefficients.

A series is stored densely: coefficient ``k`` multiplies ``tau**(base + k/2)``
and everything from ``trunc_order = base + len(coeffs)/2`` on is unknown.
The half-integer grid is all that is needed here (the amplitude series at
the small saddle carries a single ``tau**(5/2)`` term).

Coefficients are ``mpmath.mpc``; every operation runs at the larger of the
operands' precisions.  Operations never report coefficients they cannot
determine from their inputs.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .bignum import DEFAULT_PREC, BigComplex, check_prec
from .errors import SeriesStructureError

DEFAULT_ORDER = 12  # half-steps, i.e. tau**6
HALF = Fraction(1, 2)


def _frac(x) -> Fraction:
    q = Fraction(x).limit_denominator(1000)
    if (2 * q).denominator != 1:
        raise SeriesStructureError(f"exponent {x} is not on the half-integer grid")
    return q


@dataclass(frozen=True)
class PuiseuxSeries:
    base: Fraction
    coeffs: tuple
    precision: int = DEFAULT_PREC

    def __post_init__(self):
        object.__setattr__(self, "base", _frac(self.base))
        check_prec(self.precision)
        with mp.workdps(self.precision):
            coeffs = tuple(c if isinstance(c, mp.mpc) else mp.mpc(_scalar(c)) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction ---------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Mapping, trunc_order, precision: int = DEFAULT_PREC):
        """Build from ``{exponent: coefficient}``; absent exponents are zero."""
        trunc = _frac(trunc_order)
        exps = [_frac(e) for e in terms]
        base = min(exps) if exps else trunc
        base = min(base, trunc)
        n = int(2 * (trunc - base))
        coeffs = [mp.mpc(0)] * n
        with mp.workdps(precision):
            for e, c in terms.items():
                k = int(2 * (_frac(e) - base))
                if k < n:
                    coeffs[k] = mp.mpc(c)
        return cls(base, tuple(coeffs), precision)

    @classmethod
    def constant(cls, c, trunc_order, precision: int = DEFAULT_PREC):
        return cls.from_terms({0: c}, trunc_order, precision)

    @classmethod
    def monomial(cls, c, exponent, trunc_order, precision: int = DEFAULT_PREC):
        return cls.from_terms({exponent: c}, trunc_order, precision)

    @classmethod
    def variable(cls, trunc_order, precision: int = DEFAULT_PREC):
        """The series ``tau`` itself."""
        return cls.from_terms({1: 1}, trunc_order, precision)

    # -- inspection -----------------------------------------------------
    @property
    def trunc_order(self) -> Fraction:
        return self.base + Fraction(len(self.coeffs), 2)

    def exponents(self):
        return [self.base + Fraction(k, 2) for k in range(len(self.coeffs))]

    def terms(self):
        """``[(exponent, coefficient)]`` for the stored grid, zeros included."""
        return list(zip(self.exponents(), self.coeffs))

    def coeff(self, exponent) -> mp.mpc:
        e = _frac(exponent)
        if e >= self.trunc_order:
            raise SeriesStructureError(
                f"coefficient of tau^{e} is beyond the truncation order {self.trunc_order}"
            )
        if e < self.base:
            return mp.mpc(0)
        return self.coeffs[int(2 * (e - self.base))]

    def __getitem__(self, exponent):
        return self.coeff(exponent)

    def is_integral(self) -> bool:
        """True when every nonzero coefficient sits on an integer exponent."""
        return all(c == 0 for e, c in self.terms() if e.denominator != 1)

    def leading(self, tol=0):
        """``(exponent, coefficient)`` of the first coefficient with ``|c| > tol``."""
        for e, c in self.terms():
            if abs(c) > tol:
                return e, c
        return None

    def normalized(self, tol=0) -> "PuiseuxSeries":
        """Drop leading (near-)zero coefficients, moving the base up."""
        lead = self.leading(tol)
        if lead is None:
            return PuiseuxSeries(self.trunc_order, (), self.precision)
        k = int(2 * (lead[0] - self.base))
        return PuiseuxSeries(lead[0], self.coeffs[k:], self.precision)

    def truncate(self, trunc_order) -> "PuiseuxSeries":
        t = min(_frac(trunc_order), self.trunc_order)
        return self._regrid(min(self.base, t), t)

    def _regrid(self, base, trunc) -> "PuiseuxSeries":
        """Same series on the grid ``[base, trunc)``; ``base`` may only move down."""
        base = _frac(base)
        if base > self.base and any(c != 0 for e, c in self.terms() if e < base):
            raise SeriesStructureError("regridding would drop nonzero coefficients")
        n = int(2 * (trunc - base))
        out = []
        for k in range(n):
            e = base + Fraction(k, 2)
            out.append(self.coeff(e) if e >= self.base else mp.mpc(0))
        return PuiseuxSeries(base, tuple(out), self.precision)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return self + PuiseuxSeries.constant(_scalar(other), self.trunc_order, self.precision)
        prec = max(self.precision, o.precision)
        base = min(self.base, o.base)
        trunc = min(self.trunc_order, o.trunc_order)
        if trunc <= base:
            return PuiseuxSeries(trunc, (), prec)
        a, b = self._regrid(base, trunc), o._regrid(base, trunc)
        with mp.workdps(prec):
            return PuiseuxSeries(base, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), prec)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.base, tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PuiseuxSeries":
        with mp.workdps(self.precision):
            c = _scalar(c)
            return PuiseuxSeries(self.base, tuple(c * x for x in self.coeffs), self.precision)

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by ``tau**exponent``."""
        e = _frac(exponent)
        return PuiseuxSeries(self.base + e, self.coeffs, self.precision)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.scale(other)
        return series_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            with mp.workdps(self.precision):
                return self.scale(1 / _scalar(other))
        return series_mul(self, series_pow(o, -1))

    def __rtruediv__(self, other):
        return series_pow(self, -1).scale(other)

    def __pow__(self, alpha):
        return series_pow(self, alpha)

    def exp(self):
        return series_exp(self)

    def log(self):
        return series_log(self)

    def map(self, fn) -> "PuiseuxSeries":
        """Apply ``fn`` coefficient-wise (e.g. ``mp.re`` for real parts at real tau)."""
        with mp.workdps(self.precision):
            return PuiseuxSeries(self.base, tuple(fn(c) for c in self.coeffs), self.precision)

    def conjugate(self):
        return self.map(mp.conj)

    # -- evaluation -----------------------------------------------------
    def __call__(self, tau):
        return self.evaluate(tau)

    def evaluate(self, tau, upto=None) -> mp.mpc:
        """Partial sum at ``tau`` (principal ``tau**(1/2)``), optionally only
        exponents below ``upto``."""
        with mp.workdps(self.precision):
            s = mp.sqrt(mp.mpmathify(tau))
            total = mp.mpc(0)
            for k, c in enumerate(self.coeffs):
                e = self.base + Fraction(k, 2)
                if upto is not None and e >= upto:
                    break
                if c != 0:
                    total += c * s ** int(2 * e)
            return total

    def omitted_term(self, tau, exponent) -> mp.mpf:
        """``|c_e tau^e|`` for a stored exponent, used as a truncation yardstick."""
        with mp.workdps(self.precision):
            return abs(self.coeff(exponent) * mp.sqrt(mp.mpmathify(tau)) ** int(2 * _frac(exponent)))

    def allclose(self, other: "PuiseuxSeries", tol) -> bool:
        d = (self - other)
        return all(abs(c) <= tol for c in d.coeffs)

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        coeffs = [BigComplex.of(c, self.precision).to_json() for c in self.coeffs]
        return {
            "base_exponent": str(self.base),
            "coeffs": coeffs,
            "trunc_order": str(self.trunc_order),
            "precision": self.precision,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PuiseuxSeries":
        prec = int(data.get("precision", DEFAULT_PREC))
        coeffs = tuple(BigComplex.from_json(c, prec).value for c in data["coeffs"])
        s = cls(Fraction(data["base_exponent"]), coeffs, prec)
        if s.trunc_order != Fraction(data["trunc_order"]):
            raise SeriesStructureError("trunc_order inconsistent with coefficient count")
        return s

    def __str__(self):
        parts = []
        for e, c in self.terms():
            if c != 0:
                parts.append(f"({mp.nstr(c, 12)})*tau^{e}")
        return " + ".join(parts + [f"O(tau^{self.trunc_order})"])


def _scalar(c):
    if isinstance(c, BigComplex):
        return c.value
    return mp.mpmathify(c)


def series_mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    """Cauchy product.

    The result is known up to ``min(a.trunc + b.base, b.trunc + a.base)``.
    """
    prec = max(a.precision, b.precision)
    base = a.base + b.base
    trunc = min(a.trunc_order + b.base, b.trunc_order + a.base)
    n = int(2 * (trunc - base))
    if n <= 0:
        return PuiseuxSeries(trunc, (), prec)
    ac, bc = a.coeffs, b.coeffs
    out = []
    with mp.workdps(prec):
        for k in range(n):
            s = mp.mpc(0)
            lo = max(0, k - len(bc) + 1)
            hi = min(k, len(ac) - 1)
            for i in range(lo, hi + 1):
                x = ac[i]
                if x:
                    s += x * bc[k - i]
            out.append(s)
    return PuiseuxSeries(base, tuple(out), prec)


def _on_zero_base(a: PuiseuxSeries) -> list:
    """Coefficients on the grid starting at exponent 0."""
    if a.base >= 0:
        return list(a._regrid(0, a.trunc_order).coeffs)
    k = int(-2 * a.base)
    return list(a.coeffs[k:])


def series_exp(a: PuiseuxSeries) -> PuiseuxSeries:
    """``exp`` of a series without negative powers."""
    an = a.normalized()
    if an.coeffs and an.base < 0:
        raise SeriesStructureError("exp of a series with negative powers")
    if a.trunc_order <= 0:
        raise SeriesStructureError("exp needs the constant term to be known")
    c = _on_zero_base(a)
    n = len(c)
    with mp.workdps(a.precision):
        e = [mp.exp(c[0])]
        for k in range(1, n):
            s = mp.mpc(0)
            for j in range(1, k + 1):
                if c[j]:
                    s += j * c[j] * e[k - j]
            e.append(s / k)
    return PuiseuxSeries(0, tuple(e), a.precision)


def _unit_part(a: PuiseuxSeries):
    """Split ``a = c0 * tau**b * (1 + u)``; returns ``(b, c0, [1, u1, u2, ...])``."""
    an = a.normalized()
    if not an.coeffs:
        raise SeriesStructureError("series has no nonzero coefficient below its truncation order")
    c0 = an.coeffs[0]
    with mp.workdps(a.precision):
        u = [x / c0 for x in an.coeffs]
    return an.base, c0, u


def series_log(a: PuiseuxSeries) -> PuiseuxSeries:
    """Principal ``log``; the series must have a nonzero constant term."""
    b, c0, u = _unit_part(a)
    if b != 0:
        raise SeriesStructureError("log of a series whose leading exponent is not 0")
    n = len(u)
    with mp.workdps(a.precision):
        lg = [mp.mpc(0)] * n
        for k in range(1, n):
            s = k * u[k]
            for j in range(1, k):
                if u[k - j]:
                    s -= j * lg[j] * u[k - j]
            lg[k] = s / k
        lg[0] = mp.log(c0)
    return PuiseuxSeries(0, tuple(lg), a.precision)


def series_pow(a: PuiseuxSeries, alpha) -> PuiseuxSeries:
    """``a**alpha`` for rational ``alpha``, principal branch on the leading coefficient.

    The leading monomial ``tau**b`` becomes ``tau**(b*alpha)``, which must
    stay on the half-integer grid.
    """
    alpha = Fraction(alpha)
    b, c0, u = _unit_part(a)
    new_base = b * alpha
    if (2 * new_base).denominator != 1:
        raise SeriesStructureError(f"tau^{b} raised to {alpha} leaves the half-integer grid")
    n = len(u)
    with mp.workdps(a.precision):
        al = mp.mpf(alpha.numerator) / alpha.denominator
        p = [mp.mpc(1)] + [mp.mpc(0)] * (n - 1)
        for k in range(1, n):
            s = mp.mpc(0)
            for j in range(1, k + 1):
                if u[j]:
                    s += ((al + 1) * j - k) * u[j] * p[k - j]
            p[k] = s / k
        lead = mp.power(c0, al) if alpha.denominator != 1 else c0 ** alpha.numerator
        out = tuple(lead * x for x in p)
    return PuiseuxSeries(new_base, out, a.precision)


def series_compose(outer, inner: PuiseuxSeries) -> PuiseuxSeries:
    """``outer(inner(tau))``.

    ``outer`` is either a :class:`PuiseuxSeries` in its own variable (then
    ``inner`` must have a positive leading exponent so the omitted tail of
    ``outer`` stays small) or a plain sequence ``[c0, c1, ...]`` read as an
    exact polynomial, which composes with any ``inner``.
    """
    if isinstance(outer, PuiseuxSeries):
        poly = False
        terms = [(e, c) for e, c in outer.terms() if c != 0]
        outer_trunc = outer.trunc_order
        prec = max(outer.precision, inner.precision)
    elif isinstance(outer, Sequence):
        poly = True
        terms = [(Fraction(k), mp.mpc(c)) for k, c in enumerate(outer) if c != 0]
        outer_trunc = None
        prec = inner.precision
    else:
        raise TypeError("outer must be a PuiseuxSeries or a coefficient sequence")

    lead = inner.leading()
    if lead is None:
        raise SeriesStructureError("inner series vanishes to its truncation order")
    p = lead[0]
    if not poly and p <= 0:
        raise SeriesStructureError(
            "composition with a truncated outer series needs an inner series "
            "with positive leading exponent"
        )

    half_steps = any(e.denominator != 1 for e, _ in terms)
    w = series_pow(inner, HALF) if half_steps else inner
    scale = 2 if half_steps else 1

    trunc = inner.trunc_order + 64  # placeholder, tightened by the arithmetic below
    powers = {}

    def wpow(m):
        if m not in powers:
            if m == 0:
                powers[m] = PuiseuxSeries.constant(1, trunc, prec)
            elif m > 0:
                powers[m] = w if m == 1 else series_mul(wpow(m - 1), w)
            else:
                powers[m] = series_pow(w, m)
        return powers[m]

    result = None
    for e, c in terms:
        m = int(e * scale)
        term = wpow(m).scale(c)
        result = term if result is None else result + term
    if result is None:
        result = PuiseuxSeries(inner.trunc_order, (), prec)
    if outer_trunc is not None:
        result = result.truncate(p * outer_trunc)
    else:
        result = result.truncate(result.trunc_order)
    return PuiseuxSeries(result.base, result.coeffs, prec)


def log1p_series(n_terms: int, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """``log(1+z) = z - z^2/2 + ...`` truncated at ``z**n_terms``."""
    with mp.workdps(precision):
        terms = {k: mp.mpf((-1) ** (k + 1)) / k for k in range(1, n_terms)}
    return PuiseuxSeries.from_terms(terms, n_terms, precision)
