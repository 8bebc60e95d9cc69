"""Phase, amplitude and the broken-line contour for J0.

    J0(tau) = int_0^oo 2 pi f(z) e^{phi(z, tau)} dz,
    phi(z, tau) = -pi z - pi/(4z) + ((1/2 + 2 pi i tau^-2)/2) log(1 - iz),
    f(z) = 1 + z^{-5/2}/4.

The path runs 0 -> q2- -> q2+ -> q1- -> q1+ -> q1+ + T, with the two
middle segments centred on the saddles q2 and q1 and pointing along their
steepest-descent directions.  The five pieces are J1..J5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .bignum import DEFAULT_PREC, BigComplex, check_prec
from .errors import AccuracyError, DomainError
from .quadrature import QuadratureResult, adaptive_gl, panel_march
from .saddles import TAU_MAX, solve_saddles

VARIANTS = ("quarter", "half")


def _tau(tau):
    tau = mp.mpmathify(tau)
    if mp.im(tau) != 0 or mp.re(tau) <= 0:
        raise DomainError(f"tau must be a positive real number, got {tau}")
    return mp.re(tau)


def _check_range(tau):
    if tau > TAU_MAX:
        raise DomainError(f"tau = {mp.nstr(tau, 8)} is outside (0, 1/4]")


def phase_coefficient(tau):
    """``(1/2 + 2 pi i tau^-2) / 2``, the weight of ``log(1 - iz)`` in the phase."""
    return (mp.mpf(1) / 2 + 2j * mp.pi / tau**2) / 2


def log_upper(z):
    """``log z`` with argument in ``(-pi/2, 3pi/2]``, cut along ``-i[0, oo)``."""
    z = mp.mpmathify(z)
    if z == 0 or (mp.re(z) == 0 and mp.im(z) < 0):
        raise DomainError("z lies on the cut -i[0, oo) of the amplitude")
    a = mp.arg(z)
    if a <= -mp.pi / 2:
        a += 2 * mp.pi
    return mp.mpc(mp.log(abs(z)), a)


def phi(z, tau):
    """The phase; ``log(1 - iz)`` is the principal logarithm."""
    z = mp.mpmathify(z)
    tau = _tau(tau)
    if z == 0:
        raise DomainError("phi is singular at z = 0")
    w = 1 - 1j * z
    if mp.im(w) == 0 and mp.re(w) <= 0:
        raise DomainError("1 - iz lies on the cut of the logarithm")
    return -mp.pi * z - mp.pi / (4 * z) + phase_coefficient(tau) * mp.log(w)


def f_amp(z):
    return 1 + mp.exp(-mp.mpf(5) / 2 * log_upper(z)) / 4


def dphi_n(z, tau, n: int):
    """``n``-th derivative of the phase in closed form."""
    z = mp.mpmathify(z)
    tau = _tau(tau)
    if n == 0:
        return phi(z, tau)
    c = phase_coefficient(tau)
    w = 1 - 1j * z
    if n == 1:
        return -mp.pi + mp.pi / (4 * z * z) - 1j * c / w
    return ((-1) ** (n + 1) * mp.factorial(n) * mp.pi / (4 * z ** (n + 1))
            - c * (1j) ** n * mp.factorial(n - 1) / w**n)


def integrand(z, tau):
    return 2 * mp.pi * f_amp(z) * mp.exp(phi(z, tau))


def _fast_integrand(tau):
    """Integrand closure with the tau-dependent constants hoisted."""
    c = phase_coefficient(tau)
    pi = mp.pi
    two_pi = 2 * pi
    half_pi = pi / 2

    def g(z):
        a = mp.arg(z)
        if a <= -half_pi:
            a += 2 * pi
        L = mp.mpc(mp.log(abs(z)), a)
        e = -pi * z - pi / (4 * z) + c * mp.log(1 - 1j * z)
        return two_pi * (1 + mp.exp(-2.5 * L) / 4) * mp.exp(e)

    return g


def guard_digits(tau) -> int:
    """Extra digits that absorb the size of ``Im phi`` along the path."""
    tau = float(tau)
    return 10 + int(math.log10(1 + 2 * math.pi / tau**2 * (1 + abs(math.log(tau)))))


# -- path ---------------------------------------------------------------------

@dataclass(frozen=True)
class ContourPath:
    tau: mp.mpf
    nodes: tuple
    T: mp.mpf
    tail_bound: mp.mpf
    variant: str = "quarter"
    precision: int = DEFAULT_PREC

    @property
    def segments(self):
        v = [n.value for n in self.nodes]
        return list(zip(v[:-1], v[1:]))

    def to_json(self):
        return {
            "tau": mp.nstr(self.tau, self.precision),
            "variant": self.variant,
            "nodes": [n.to_json() for n in self.nodes],
            "T": mp.nstr(self.T, 20),
            "tail_bound": mp.nstr(self.tail_bound, 5),
        }


def _re_phi_ray(x, y0, tau):
    """``Re phi(x + i y0)`` without forming the full complex phase."""
    z = mp.mpc(x, y0)
    return mp.re(phi(z, tau))


def _ray_decay(x0, y0, tau):
    """Lower bound on ``-d/dx Re phi(x + i y0)`` valid for all ``x >= x0 >= 0``."""
    c = 1 + y0
    return (mp.pi - mp.pi / (4 * (x0 * x0 + y0 * y0)) - 1 / (8 * c)
            - mp.pi / tau**2 * c / (c * c + x0 * x0))


def ray_tail_bound(start, T, tau):
    """Bound on ``|int_{start+T}^{start+oo} 2 pi f e^phi dz|`` along the horizontal ray."""
    x0, y0 = mp.re(start) + T, mp.im(start)
    kappa = _ray_decay(x0, y0, tau)
    if kappa <= 0:
        return mp.inf
    fmax = 1 + abs(mp.mpc(x0, y0)) ** (-mp.mpf(5) / 2) / 4
    return 2 * mp.pi * fmax * mp.exp(_re_phi_ray(x0, y0, tau)) / kappa


def j4_scale(tau):
    """Rough size of J4, ``2 pi sqrt(2) tau^{-3/2}``; sets absolute tolerances."""
    return 2 * mp.pi * mp.sqrt(2) * tau ** (-mp.mpf(3) / 2)


def build_path(tau, precision: int = DEFAULT_PREC, variant: str = "quarter", saddles=None):
    """The broken line through the saddles.

    ``q1+- = q1 +- e^{i pi/4} tau^-2 / 2`` and ``q2- = q2 - e^{3 pi i/4} tau/4``;
    ``q2+`` uses ``+tau/4`` (``variant="quarter"``) or ``+tau/2`` (``"half"``).
    The ray length ``T >= 1`` is the smallest (to 1%) for which the tail bound is
    below ``10^-(precision+5)`` times the smaller of ``|J4|`` and a bound
    on the whole ray piece.
    """
    check_prec(precision)
    tau = _tau(tau)
    _check_range(tau)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    s = saddles or solve_saddles(tau, precision)
    dps = precision + guard_digits(tau)
    with mp.workdps(dps):
        tau = mp.mpf(tau)
        q1, q2 = s.q1.value, s.q2.value
        eps = mp.expjpi(mp.mpf(1) / 4)
        eps3 = mp.expjpi(mp.mpf(3) / 4)
        q1m, q1p = q1 - eps / (2 * tau**2), q1 + eps / (2 * tau**2)
        q2m = q2 - eps3 * tau / 4
        q2p = q2 + eps3 * tau * (mp.mpf(1) / 4 if variant == "quarter" else mp.mpf(1) / 2)
        for z in (q2m, q2p, q1m, q1p):
            if mp.im(z) <= 0:
                raise DomainError("contour node left the upper half-plane")
        # relative to the ray piece itself, which can be thousands of orders below J4
        own = ray_tail_bound(q1p, 0, tau)
        target = mp.mpf(10) ** (-(precision + 5)) * min(j4_scale(tau), own)
        # the ray is never shorter than 1; below that the saving is nil
        lo, hi = mp.mpf(1), mp.mpf(1)
        while ray_tail_bound(q1p, hi, tau) > target:
            lo, hi = hi, 2 * hi
            if hi > 1e12:
                raise AccuracyError("no finite ray length meets the tail bound")
        while hi - lo > hi / 100:
            mid = (lo + hi) / 2
            if ray_tail_bound(q1p, mid, tau) > target:
                lo = mid
            else:
                hi = mid
        T = hi
        tail = ray_tail_bound(q1p, T, tau)
        nodes = tuple(BigComplex.of(z, precision) for z in (0, q2m, q2p, q1m, q1p, q1p + T))
    return ContourPath(tau, nodes, T, tail, variant, precision)


# -- segment integration -------------------------------------------------------

def _check_segment(a, b):
    # Re(1 - iz) = 1 + Im z > 0 at both ends keeps the whole segment off the log cut
    if mp.im(a) <= -1 or mp.im(b) <= -1:
        raise DomainError("segment meets the cut of log(1 - iz)")
    for z in (a, b):
        if z != 0 and mp.re(z) == 0 and mp.im(z) < 0:
            raise DomainError("segment endpoint on the cut of z^(-5/2)")
    # a segment crossing -i[0, oo) would have to pass below the real axis
    if mp.im(a) < 0 and mp.im(b) < 0 and mp.re(a) * mp.re(b) < 0:
        raise DomainError("segment crosses the cut of z^(-5/2)")


def _grading(levels: int):
    pts = []
    for k in range(1, levels + 1):
        pts.append(mp.mpf(2) ** -k)
        pts.append(1 - mp.mpf(2) ** -k)
    return pts


def integrate_segment(a, b, tau, precision: int = DEFAULT_PREC, *, rel_tol=None,
                      abs_tol=None, grading: int | None = None) -> QuadratureResult:
    """``int_a^b 2 pi f(z) e^{phi(z)} dz`` along the straight segment.

    Adaptive 40-point Gauss-Legendre with an initial partition graded
    geometrically towards both endpoints, where the mass sits on the
    segments of the broken line.
    """
    check_prec(precision)
    tau = _tau(tau)
    dps = precision + guard_digits(tau)
    with mp.workdps(dps):
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        _check_segment(a, b)
        if a == b:
            return QuadratureResult(BigComplex.of(0, precision), mp.mpf(0), 0)
        if grading is None:
            grading = 12 + int(max(0, mp.log(1 + abs(b - a) / tau, 2)))
        if rel_tol is None and abs_tol is None:
            rel_tol = mp.mpf(10) ** (-(precision + 3))
        g = _fast_integrand(tau)
        res = adaptive_gl(g, a, b, dps=dps, rel_tol=rel_tol, abs_tol=abs_tol,
                          breakpoints=_grading(grading))
    return QuadratureResult(BigComplex.of(res.value, precision), res.error_estimate, res.evaluations)


@dataclass(frozen=True)
class Components:
    tau: mp.mpf
    path: ContourPath
    parts: dict          # "J1".."J5" -> QuadratureResult
    J0: BigComplex
    error_estimate: mp.mpf
    evaluations: int

    def __getitem__(self, key):
        if key == "J0":
            return self.J0
        return self.parts[key].value

    def to_json(self):
        out = {k: v.to_json() for k, v in self.parts.items()}
        out["J0"] = {"value": self.J0.to_json(), "error_estimate": mp.nstr(self.error_estimate, 6),
                     "evaluations": self.evaluations}
        out["path"] = self.path.to_json()
        return out


def eval_components(tau, precision: int = DEFAULT_PREC, variant: str = "quarter",
                    saddles=None) -> Components:
    """J1..J5 along the broken line and their sum J0.

    The discarded tail of the last ray is added to J5's error estimate.
    """
    tau = _tau(tau)
    path = build_path(tau, precision, variant, saddles)
    parts = {}
    with mp.workdps(precision + guard_digits(tau)):
        for k, (a, b) in enumerate(path.segments, start=1):
            parts[f"J{k}"] = integrate_segment(a, b, tau, precision)
        j5 = parts["J5"]
        parts["J5"] = QuadratureResult(j5.value, j5.error_estimate + path.tail_bound, j5.evaluations)
        total = sum((p.value.value for p in parts.values()), mp.mpc(0))
        err = sum((p.error_estimate for p in parts.values()), mp.mpf(0))
    evals = sum(p.evaluations for p in parts.values())
    return Components(tau, path, parts, BigComplex.of(total, precision), err, evals)


# -- the real line -------------------------------------------------------------

REALLINE_TAU_MIN = 0.05


def _log_abs_weight0(x: float) -> float:
    """``log |psi0(x)|`` where ``psi0(x) = 2 pi (1 + x^{-5/2}/4) e^{-pi x - pi/(4x)}``."""
    return math.log(2 * math.pi * (1 + x**-2.5 / 4)) - math.pi * x - math.pi / (4 * x)


def _weight0_rate(x: float) -> float:
    return math.pi + math.pi / (4 * x * x) + 2.5 / x


def realline_integral(weight, log_abs_weight, weight_rate, tau, precision: int,
                      *, x_min: float = 1e-3, log10_scale=None):
    """``int_0^oo weight(x) (1 - ix)^{1/4 + pi i tau^-2} dx`` by :func:`panel_march`.

    ``log_abs_weight`` and ``weight_rate`` are float bounds for ``log |weight|``
    and ``|(log weight)'|``.  Both truncation points come from the envelope:
    below ``x0`` and above ``X`` the integrand is under the tolerance, and
    the bounds on the two discarded pieces join the error estimate.
    """
    tau = _tau(tau)
    tf = float(tau)
    s_abs = math.hypot(0.25, math.pi / tf**2)
    ln10 = math.log(10)

    def log_env(x):
        return (log_abs_weight(x) + math.log1p(x * x) / 8 + math.pi / tf**2 * math.atan(x)) / ln10

    def rate(x):
        return weight_rate(x) + s_abs / math.sqrt(1 + x * x)

    if log10_scale is None:
        log10_scale = math.log10(float(j4_scale(tau)))
    log10_tol = log10_scale - precision - 2

    # left cut: envelope increasing there, so the skipped piece is <= x0 * env(x0)
    x0 = 0.5
    while log_env(x0) + math.log10(x0) > log10_tol - 1 and x0 > x_min:
        x0 /= 2
    # right cut: for x >= 1 the tail is below env(X) / (pi - 1/8)
    X = 2.0
    while log_env(X) - math.log10(math.pi - 0.125) > log10_tol - 1:
        X *= 1.25
    head = 10 ** (log_env(x0) + math.log10(x0))
    tail = 10 ** (log_env(X) - math.log10(math.pi - 0.125))

    peak = max(log_env(x0), log_env(X), log_env(1 / tf))
    with mp.workdps(int(peak - log10_tol) + 40):
        c = mp.mpf(1) / 4 + 1j * mp.pi / tau**2

    def fn(x):
        return weight(x) * mp.exp(c * mp.log(1 - 1j * x))

    value, err, evals = panel_march(fn, log_env, rate, x0, X, log10_tol=log10_tol,
                                    guard=12 + int(math.log10(1 + s_abs * math.log1p(X * X))))
    with mp.workdps(precision + 10):
        err = mp.mpf(err) + head + tail
        return QuadratureResult(BigComplex.of(value, precision), err, evals), (x0, X)


def eval_J0_realline(tau, precision: int = DEFAULT_PREC, *, tau_min: float = REALLINE_TAU_MIN):
    """J0 straight along the positive real axis: the independent oracle for the contour."""
    check_prec(precision)
    tau = _tau(tau)
    if tau < tau_min:
        raise DomainError(f"real-line quadrature disabled below tau = {tau_min}")

    def weight(x):
        return 2 * mp.pi * (1 + x ** (-mp.mpf(5) / 2) / 4) * mp.exp(-mp.pi * x - mp.pi / (4 * x))

    res, _ = realline_integral(weight, _log_abs_weight0, _weight0_rate, tau, precision)
    return res
