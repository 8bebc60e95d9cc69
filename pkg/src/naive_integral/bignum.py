"""Arbitrary precision complex scalars.

All heavy numerics run on :mod:`mpmath` ``mpc`` values inside a
``workdps`` context.  :class:`BigComplex` is the value type handed across
module boundaries: it records the decimal precision the number was
computed at and serialises losslessly as decimal strings.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath as mp

MIN_PREC = 30
DEFAULT_PREC = 50


def default_prec() -> int:
    """Default working precision in decimal digits (``NAIVE_PREC`` overrides)."""
    env = os.environ.get("NAIVE_PREC")
    if env:
        return check_prec(int(env))
    return DEFAULT_PREC


def check_prec(prec: int) -> int:
    if int(prec) < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} digits, got {prec}")
    return int(prec)


def to_mpc(x) -> mp.mpc:
    if isinstance(x, BigComplex):
        return x.value
    return mp.mpc(x)


def _digits(x: mp.mpf, prec: int) -> str:
    # enough digits for an exact round trip at the storage precision
    with mp.workdps(prec + 5):
        return mp.nstr(mp.mpf(x), mp.libmp.repr_dps(mp.mp.prec))


@dataclass(frozen=True)
class BigComplex:
    re: mp.mpf
    im: mp.mpf
    precision: int = DEFAULT_PREC

    def __post_init__(self):
        check_prec(self.precision)
        for part in (self.re, self.im):
            if not mp.isfinite(part):
                raise ValueError("BigComplex components must be finite")

    @classmethod
    def of(cls, x, precision: int | None = None) -> "BigComplex":
        """Wrap a number (``mpc``, ``mpf``, ``complex``, str, ...)."""
        if isinstance(x, BigComplex):
            if precision is None or precision == x.precision:
                return x
            return cls(x.re, x.im, precision)
        prec = DEFAULT_PREC if precision is None else precision
        with mp.workdps(prec + 5):
            z = mp.mpc(x)
            return cls(+z.real, +z.imag, prec)

    @property
    def value(self) -> mp.mpc:
        # built from the raw parts so the stored digits survive a low context precision
        return mp.mp.make_mpc((mp.mpf(self.re)._mpf_, mp.mpf(self.im)._mpf_))

    def _lift(self, other):
        if isinstance(other, BigComplex):
            return other.value, max(self.precision, other.precision)
        return mp.mpc(other), self.precision

    def _binary(self, other, op):
        w, prec = self._lift(other)
        with mp.workdps(prec + 5):
            return BigComplex.of(op(self.value, w), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.re, -self.im, self.precision)

    def __abs__(self):
        with mp.workdps(self.precision + 5):
            return abs(self.value)

    def conjugate(self):
        return BigComplex(self.re, -self.im, self.precision)

    def __complex__(self):
        return complex(self.value)

    def __eq__(self, other):
        if isinstance(other, BigComplex):
            return self.re == other.re and self.im == other.im
        try:
            return self.value == mp.mpc(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        with mp.workdps(self.precision + 5):
            return mp.nstr(self.value, self.precision)

    def to_json(self) -> list[str]:
        """``[re, im]`` as decimal strings carrying all working digits."""
        return [_digits(self.re, self.precision), _digits(self.im, self.precision)]

    @classmethod
    def from_json(cls, pair, precision: int | None = None) -> "BigComplex":
        prec = DEFAULT_PREC if precision is None else precision
        with mp.workdps(prec + 5):
            return cls(mp.mpf(pair[0]), mp.mpf(pair[1]), prec)


def mpf_to_str(x, prec: int) -> str:
    """Decimal string for a real value, used in JSON output."""
    return _digits(mp.mpf(x), prec)
