"""Saddle points of the phase: the roots of the cubic

    P(z, tau) = z^3 + (i - 1/(4 pi) - i tau^-2) z^2 - z/4 - i/4,

their series expansions in ``tau`` and the ramification points where two
roots collide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from .bignum import DEFAULT_PREC, BigComplex, check_prec
from .errors import ClassificationError, ConvergenceError, DomainError
from .series import PuiseuxSeries, series_mul, series_pow

TAU_MAX = mp.mpf(1) / 4
LABELS = ("q1", "q2", "q3")


def _c2(tau):
    return 1j - 1 / (4 * mp.pi) - 1j / tau**2


def P(z, tau):
    """The saddle cubic; ``phi'(z) = 0`` is equivalent to ``P(z, tau) = 0``."""
    z = mp.mpmathify(z)
    return ((z + _c2(tau)) * z - mp.mpf(1) / 4) * z - 0.25j


def dP(z, tau):
    z = mp.mpmathify(z)
    return (3 * z + 2 * _c2(tau)) * z - mp.mpf(1) / 4


def _check_tau(tau):
    tau = mp.mpmathify(tau)
    if mp.im(tau) != 0 or tau <= 0:
        raise DomainError(f"tau must be a positive real number, got {tau}")
    return mp.re(tau)


def _polish(z, tau, dps, max_iter=80):
    """Newton on P at ``dps`` digits, stopping when the step is negligible."""
    with mp.workdps(dps):
        z = mp.mpc(z)
        tau = mp.mpf(tau)
        tol = mp.mpf(10) ** (-dps + 3) * max(1, abs(z))
        for _ in range(max_iter):
            step = P(z, tau) / dP(z, tau)
            z -= step
            if abs(step) <= tol:
                return z
    raise ConvergenceError(f"Newton polish of a saddle did not converge at tau={tau}")


def _roots(tau, prec):
    c2 = complex(_c2(tau))
    seeds = np.roots([1, c2, -0.25, -0.25j])
    q1_scale = max(1.0, float(abs(c2)))
    dps = prec + 10 + 3 * int(mp.ceil(mp.log10(q1_scale)))
    roots = [_polish(complex(s), tau, dps) for s in seeds]
    # companion seeds are accurate enough that polishing never merges roots
    # in practice; make sure anyway
    for i in range(3):
        for j in range(i):
            if abs(roots[i] - roots[j]) < mp.mpf(10) ** (-prec):
                raise ConvergenceError("two polished saddles coincide")
    return roots, dps


def leading_predictions(tau):
    """Low-order locations used to label roots."""
    return {
        "q1": 1j / tau**2 + 1 / (4 * mp.pi) - 1j,
        "q2": 0.5j * tau,
        "q3": -0.5j * tau,
    }


@dataclass(frozen=True)
class SaddleSet:
    tau: mp.mpf
    q1: BigComplex | None
    q2: BigComplex | None
    q3: BigComplex | None
    residuals: dict
    labels: dict = field(default_factory=dict)
    unlabeled: tuple = ()
    precision: int = DEFAULT_PREC

    @property
    def labeled(self) -> bool:
        return self.q1 is not None

    def roots(self):
        if self.labeled:
            return [self.q1, self.q2, self.q3]
        return list(self.unlabeled)

    def to_json(self) -> dict:
        out = {"tau": mp.nstr(self.tau, self.precision), "precision": self.precision}
        if self.labeled:
            for name in LABELS:
                out[name] = getattr(self, name).to_json()
            out["labels"] = {k: {"distance": mp.nstr(d, 8), "margin": mp.nstr(m, 8)}
                             for k, (d, m) in self.labels.items()}
        else:
            out["roots"] = [r.to_json() for r in self.unlabeled]
        out["residuals"] = {k: mp.nstr(v, 5) for k, v in self.residuals.items()}
        return out


def solve_saddles(tau, precision: int = DEFAULT_PREC) -> SaddleSet:
    """The three roots of P, polished to ``precision`` digits.

    For ``0 < tau <= 1/4`` each prediction in :func:`leading_predictions`
    is matched to its nearest root; the runner-up must be clearly further
    away.  Larger tau returns the roots unlabeled.
    """
    check_prec(precision)
    tau = _check_tau(tau)
    with mp.workdps(precision + 20):
        tau = mp.mpf(tau)
        roots, dps = _roots(tau, precision)
        with mp.workdps(dps):
            res = [abs(P(r, tau)) for r in roots]
        if tau > TAU_MAX:
            return SaddleSet(
                tau, None, None, None,
                residuals={f"root{k}": r for k, r in enumerate(res)},
                unlabeled=tuple(BigComplex.of(r, precision) for r in roots),
                precision=precision,
            )
        preds = leading_predictions(tau)
        chosen, labels, residuals = {}, {}, {}
        for name in LABELS:
            d = sorted((abs(r - preds[name]), k) for k, r in enumerate(roots))
            (d0, k0), (d1, _) = d[0], d[1]
            if d1 - d0 <= mp.mpf(10) ** (-precision // 2) * max(1, d1):
                raise ClassificationError(f"{name}: two roots equidistant from the prediction")
            if k0 in chosen.values():
                raise ClassificationError(f"{name}: nearest root already claimed")
            chosen[name] = k0
            labels[name] = (d0, d1 / max(d0, mp.mpf(10) ** (-dps)))
            residuals[name] = res[k0]
        return SaddleSet(
            tau,
            *(BigComplex.of(roots[chosen[n]], precision) for n in LABELS),
            residuals=residuals,
            labels=labels,
            precision=precision,
        )


# -- series ---------------------------------------------------------------

def _series_P(z: PuiseuxSeries, dp: bool, trunc, prec):
    c2 = PuiseuxSeries.from_terms({-2: -1j, 0: 1j - 1 / (4 * mp.pi)}, trunc + 8, prec)
    if dp:
        return series_mul(z.scale(3) + c2.scale(2), z) + PuiseuxSeries.constant(
            mp.mpf(-1) / 4, trunc + 8, prec)
    return series_mul(series_mul(z + c2, z), z) - z.scale(mp.mpf(1) / 4) + PuiseuxSeries.constant(
        -0.25j, trunc + 8, prec)


_SEEDS = {"q1": ({-2: 1j}, 2), "q2": ({1: 0.5j}, 1), "q3": ({1: -0.5j}, 1)}


@lru_cache(maxsize=64)
def _saddle_series(which, order, precision):
    if which not in _SEEDS:
        raise ValueError(f"unknown saddle {which!r}; expected one of {LABELS}")
    trunc = Fraction(order, 2)
    terms, _ = _SEEDS[which]
    with mp.workdps(precision + 10):
        base = min(terms)
        z = PuiseuxSeries.from_terms(terms, trunc, precision + 10)
        for _ in range(2 * order + 10):
            corr = series_mul(_series_P(z, False, trunc, precision + 10),
                              series_pow(_series_P(z, True, trunc, precision + 10), -1))
            z_new = z - corr
            z_new = z_new._regrid(base, trunc)
            if all(c == 0 for c in (z_new - z).coeffs) or max(
                    abs(c) for c in (z_new - z).coeffs) < mp.mpf(10) ** (-(precision + 5)):
                z = z_new
                break
            z = z_new
        else:
            raise ConvergenceError(f"series Newton for {which} did not converge")
    return PuiseuxSeries(z.base, z.coeffs, precision)


def saddle_series(which: str, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """Expansion of ``q1``, ``q2`` or ``q3`` in powers of tau up to ``tau**(order/2)``.

    Found by Newton iteration on P(z(tau), tau) = 0 in the series ring,
    seeded with ``i/tau^2`` or ``+-i tau/2``.
    """
    check_prec(precision)
    if order < 1:
        raise ValueError("order must be positive")
    return _saddle_series(which, int(order), int(precision))


def scaled_saddle_series(which: str, order: int = 12, precision: int = DEFAULT_PREC) -> PuiseuxSeries:
    """``Q1 = q1 / (i tau^-2)`` or ``Q2 = q2 / (i tau / 2)``, both ``1 + O(tau)``.

    ``order`` counts half-steps of the scaled series.
    """
    if which == "q1":
        q = saddle_series("q1", order - 4, precision)
        with mp.workdps(precision):
            return q.shift(2).scale(-1j)
    if which == "q2":
        q = saddle_series("q2", order + 2, precision)
        with mp.workdps(precision):
            return q.shift(-1).scale(-2j)
    raise ValueError("scaled series exist for q1 and q2 only")


# -- localization -------------------------------------------------------------

COR_ARG_MAX = mp.atan((24 - 5 * mp.sqrt(2)) / (5 * mp.sqrt(2) - 4))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: mp.mpf
    bound: mp.mpf

    def to_json(self):
        return {"name": self.name, "passed": self.passed,
                "measured": mp.nstr(self.measured, 10), "bound": mp.nstr(self.bound, 10)}


@dataclass(frozen=True)
class LocalizationReport:
    tau: mp.mpf
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"tau": mp.nstr(self.tau, 15), "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def verify_localizations(tau, precision: int = DEFAULT_PREC, saddles: SaddleSet | None = None):
    """Measure the distances bounded by the localization statements.

    * ``|q2 - i tau/2| < tau/10``
    * ``|q1 - (i tau^-2 + 1/(4 pi) - i)| <= tau^2/2``
    * ``q2^- = q2 - e^{3 pi i/4} tau/4`` has modulus ``<= 15 tau/32`` and
      argument in ``(0, arctan((24 - 5 sqrt 2)/(5 sqrt 2 - 4))]``.
    """
    tau = _check_tau(tau)
    if tau > TAU_MAX:
        raise DomainError("localization statements hold for 0 < tau <= 1/4")
    s = saddles or solve_saddles(tau, precision)
    with mp.workdps(precision):
        q1, q2 = s.q1.value, s.q2.value
        d2 = abs(q2 - 0.5j * tau)
        d1 = abs(q1 - (1j / tau**2 + 1 / (4 * mp.pi) - 1j))
        q2m = q2 - mp.expjpi(mp.mpf(3) / 4) * tau / 4
        r0, th0 = abs(q2m), mp.arg(q2m)
        checks = (
            Check("q2_disc", d2 < tau / 10, d2, tau / 10),
            Check("q1_disc", d1 <= tau**2 / 2, d1, tau**2 / 2),
            Check("q2minus_modulus", r0 <= 15 * tau / 32, r0, 15 * tau / 32),
            Check("q2minus_argument", 0 < th0 <= COR_ARG_MAX, th0, COR_ARG_MAX),
        )
    return LocalizationReport(tau, checks)


# -- ramification -------------------------------------------------------------

def _pmul(p, q):
    out = [mp.mpc(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _padd(*ps):
    n = max(len(p) for p in ps)
    out = [mp.mpc(0)] * n
    for p in ps:
        for i, a in enumerate(p):
            out[i] += a
    return out


def _pscale(p, c):
    return [c * a for a in p]


def discriminant_u(precision: int = DEFAULT_PREC):
    """``u^3 * disc_z P`` as a cubic in ``u = tau^2`` (coefficients low to high)."""
    with mp.workdps(precision + 10):
        B = [mp.mpc(-1j), 1j - 1 / (4 * mp.pi)]  # u * (coefficient of z^2)
        c, d = mp.mpf(-1) / 4, mp.mpc(-0.25j)
        u = [0, 1]
        B2 = _pmul(B, B)
        B3 = _pmul(B2, B)
        # 18bcd - 4b^3 d + b^2 c^2 - 4c^3 - 27 d^2, each term times u^3
        return _padd(
            _pscale(_pmul(B, _pmul(u, u)), 18 * c * d),
            _pscale(B3, -4 * d),
            _pscale(_pmul(B2, u), c * c),
            _pscale([0, 0, 0, 1], -4 * c**3 - 27 * d * d),
        )


def _peval(p, x):
    return mp.polyval(list(reversed(p)), x)


@dataclass(frozen=True)
class RamificationSet:
    rho: tuple          # (rho1, rho2, rho3), Im > 0, ordered by decreasing modulus
    residuals: tuple
    precision: int = DEFAULT_PREC

    @property
    def roots(self):
        return tuple(self.rho) + tuple(-r for r in self.rho)

    def to_json(self):
        return {"rho": [r.to_json() for r in self.rho],
                "residuals": [mp.nstr(r, 5) for r in self.residuals]}


def ramification_points(precision: int = DEFAULT_PREC) -> RamificationSet:
    """Values of tau where two saddles collide (roots of the discriminant)."""
    check_prec(precision)
    D = discriminant_u(precision)
    with mp.workdps(precision + 10):
        us = mp.polyroots(list(reversed(D)), maxsteps=200, extraprec=2 * precision)
        dD = [k * a for k, a in enumerate(D)][1:]
        taus, res = [], []
        for u in us:
            for _ in range(50):
                step = _peval(D, u) / _peval(dD, u)
                u -= step
                if abs(step) < mp.mpf(10) ** (-(precision + 8)):
                    break
            r = mp.sqrt(u)
            if mp.im(r) < 0:
                r = -r
            taus.append(r)
            res.append(abs(_peval(D, u)))
        order = sorted(range(3), key=lambda k: -abs(taus[k]))
        return RamificationSet(
            tuple(BigComplex.of(taus[k], precision) for k in order),
            tuple(res[k] for k in order),
            precision,
        )
