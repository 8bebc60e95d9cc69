"""Gauss-Legendre quadrature at arbitrary precision.

Two drivers share one node generator:

* :func:`adaptive_gl` bisects fixed-order panels until each panel agrees
  with its two halves (used on the contour segments);
* :func:`panel_march` walks along the positive real axis with panels sized
  to the local oscillation rate and orders sized to the local cancellation
  depth (used for the real-line oracles).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .bignum import BigComplex

try:  # gmpy2 is the mpmath backend when present; plain ints otherwise
    from gmpy2 import mpz as MPZ
except ImportError:  # pragma: no cover
    MPZ = int
from .errors import AccuracyError


@dataclass(frozen=True)
class QuadratureResult:
    value: BigComplex
    error_estimate: mp.mpf
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error estimate must be non-negative")

    def to_json(self):
        return {
            "value": self.value.to_json(),
            "error_estimate": mp.nstr(self.error_estimate, 6),
            "evaluations": self.evaluations,
        }


def _legendre(n, x):
    """``(P_n(x), P_n'(x))`` by the three-term recurrence."""
    p0, p1 = x * 0 + 1, x
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    return p1, n * (x * p1 - p0) / (x * x - 1)


def _legendre_fixed(n, x, bits):
    """``(P_n(x), P_{n-1}(x))`` in fixed point with ``bits`` fractional bits."""
    p0, p1 = MPZ(1) << bits, x
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * ((x * p1) >> bits) - (j - 1) * p0) // j
    return p1, p0


def _compute_rule(n: int, dps: int):
    k = np.arange(1, n // 2 + 1)
    x = np.cos(np.pi * (4 * k - 1) / (4 * n + 2)) * (1 - (n - 1) / (8.0 * n**3))
    for _ in range(10):
        p, dp = _legendre(n, x)
        x = x - p / dp
    roots = [float(v) for v in x]
    if n % 2:
        roots.append(0.0)
    # fixed-point integer Newton, much cheaper than mpf arithmetic at this size
    bits = int((dps + 10) * 3.33) + 64
    nodes, weights = [], []
    with mp.workdps(dps + 10):
        ladder = [bits]
        while ladder[-1] > 120:
            ladder.append(ladder[-1] // 2)
        ladder = ladder[::-1]
        for r in roots:
            b0 = ladder[0]
            xi = MPZ(int(mp.ldexp(mp.mpf(r), b0)))
            for stage, b in enumerate(ladder):
                if stage:
                    xi <<= b - ladder[stage - 1]
                one_b = 1 << b
                for _ in range(60):
                    p1, p0 = _legendre_fixed(n, xi, b)
                    step = (p1 * (((xi * xi) >> b) - one_b)) // (n * (((xi * p1) >> b) - p0))
                    xi -= step
                    # quadratic convergence: one step per stage once close enough
                    if stage and abs(step) < (1 << (b // 2 + 8)) or abs(step) <= 4:
                        break
                else:
                    raise AccuracyError(f"Legendre root refinement failed for n={n}")
            p1, p0 = _legendre_fixed(n, xi, bits)
            xm = mp.ldexp(mp.mpf(xi), -bits)
            q = mp.ldexp(mp.mpf(((xi * p1) >> bits) - p0), -bits) * n
            nodes.append(xm)
            weights.append(2 * (1 - xm * xm) / (q * q))
    return tuple(nodes), tuple(weights)


_RULES: dict = {}


def gl_rule(n: int, dps: int):
    """Nodes ``x >= 0`` and weights of the ``n``-point rule on ``[-1, 1]``.

    Only the non-negative half is returned; nodes come in ``+-x`` pairs
    (a zero node, for odd ``n``, is last and must be counted once).
    Rules are cached per order at the highest precision requested so far.
    """
    n, dps = int(n), int(dps)
    hit = _RULES.get(n)
    if hit is None or hit[0] < dps:
        dps = max(dps, 40)
        _RULES[n] = (dps, _compute_rule(n, dps))
        hit = _RULES[n]
    return hit[1]


def gl_panel(fn, a, b, n: int, dps: int):
    """``n``-point Gauss-Legendre estimate of ``int_a^b fn``, evaluated at ``dps``."""
    nodes, weights = gl_rule(n, dps)
    with mp.workdps(dps):
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        c, h = (a + b) / 2, (b - a) / 2
        total = mp.mpc(0)
        last = len(nodes) - 1
        for k, (x, w) in enumerate(zip(nodes, weights)):
            if n % 2 and k == last:
                total += w * fn(c)
            else:
                total += w * (fn(c + h * x) + fn(c - h * x))
        return h * total


def adaptive_gl(fn, a, b, *, dps: int, rel_tol=None, abs_tol=None, n: int = 40,
                max_depth: int = 30, breakpoints=(), max_panels: int = 20000):
    """Adaptive Gauss-Legendre on the straight segment ``[a, b]`` in the complex plane.

    ``breakpoints`` are fractions in ``(0, 1)`` of the initial partition.
    A panel is accepted when its ``n``-point value agrees with the sum of
    its two halves to within its share of the tolerance; the halves are
    kept and ``|difference|`` is charged to the error estimate.  If only
    ``rel_tol`` is given the absolute tolerance is ``rel_tol`` times the
    L1 mass seen on the initial partition.
    """
    with mp.workdps(dps):
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        if a == b:
            return QuadratureResult(BigComplex.of(0, max(30, dps - 10)), mp.mpf(0), 0)
        fracs = sorted({mp.mpf(0), mp.mpf(1), *map(mp.mpf, breakpoints)})
        pts = [a + (b - a) * s for s in fracs]
        evals = 0

        def est(p, q):
            nonlocal evals
            evals += n
            return gl_panel(fn, p, q, n, dps)

        stack = []
        for p, q in zip(pts[:-1], pts[1:]):
            stack.append((p, q, est(p, q), 0))
        mass = sum(abs(v) for _, _, v, _ in stack)
        tol = mp.mpf(0)
        if rel_tol is not None:
            tol = mp.mpf(rel_tol) * mass
        if abs_tol is not None:
            tol = max(tol, mp.mpf(abs_tol))
        if tol == 0:
            tol = mp.mpf(10) ** (-(dps - 10))
        length = abs(b - a)

        total, err = mp.mpc(0), mp.mpf(0)
        panels = 0
        best_fail = None
        while stack:
            p, q, whole, depth = stack.pop()
            m = (p + q) / 2
            left, right = est(p, m), est(m, q)
            diff = abs(left + right - whole)
            share = tol * max(abs(q - p) / length, mp.mpf(2) ** -max_depth)
            panels += 1
            if diff <= share or depth >= max_depth or panels > max_panels:
                if diff > share:
                    best_fail = (p, q, diff)
                total += left + right
                err += diff
                continue
            stack.append((p, m, left, depth + 1))
            stack.append((m, q, right, depth + 1))
        prec = max(30, dps - 10)
        result = QuadratureResult(BigComplex.of(total, prec), err, evals)
        if best_fail is not None and err > tol:
            raise AccuracyError(
                f"adaptive quadrature stalled near {mp.nstr(best_fail[0], 8)} "
                f"(panel disagreement {mp.nstr(best_fail[2], 3)})",
                best=result,
            )
        return result


# -- real-line marching -------------------------------------------------------

ORDER_LADDER = (24, 32, 48, 64, 96, 128, 160, 192, 256, 320, 384, 448, 512)


def _rung(need: int) -> int:
    for n in ORDER_LADDER:
        if n >= need:
            return n
    return ORDER_LADDER[-1]


def _next_rung(n: int) -> int:
    i = ORDER_LADDER.index(n)
    return ORDER_LADDER[i + 1] if i + 1 < len(ORDER_LADDER) else n + 64


def panel_march(fn, log10_env, rate, x0: float, x1: float, *, log10_tol: float,
                phase_budget: float = 60.0, guard: int = 12, max_depth: int = 12,
                max_panels: int = 100000):
    """Integrate ``fn`` over ``[x0, x1]`` of the real axis.

    ``log10_env(x)`` bounds ``log10 |fn|`` near ``x`` and ``rate(x)``
    bounds ``|d/dx log fn|``; both are cheap float functions.  Each panel
    spans about ``phase_budget`` radians of the local rate, its order is
    picked from the digits it must resolve (local envelope over the target
    absolute tolerance ``10**log10_tol``) and its working precision follows
    the same count.  Every panel is checked against the next rule on the
    order ladder; the larger rule is kept and the difference is charged to
    the error estimate.  Panels failing the check are split in two.

    Returns ``(value, error_estimate, evaluations)``.
    """
    edges = [float(x0)]
    x = float(x0)
    while x < x1:
        h = phase_budget / max(rate(x), 1e-300)
        if x > 0:
            h = min(h, 0.5 * x)
        h = min(h, phase_budget / max(rate(min(x + h, x1)), 1e-300))
        nxt = min(x + h, x1)
        if x1 - nxt < 0.1 * h:
            nxt = x1
        edges.append(nxt)
        x = nxt
        if len(edges) > max_panels:
            raise AccuracyError("panel budget exhausted while partitioning the real line")

    peak = max(log10_env(e) for e in edges)
    acc_dps = int(max(peak, 0) - log10_tol + guard + 5)
    tol_abs = 10.0 ** log10_tol
    length = max(float(x1) - float(x0), 1e-300)
    with mp.workdps(acc_dps):
        total = mp.mpc(0)
        err = mp.mpf(0)
    evals = 0
    panels = 0
    pending = [(a, b, 0) for a, b in zip(edges[:-1], edges[1:])][::-1]
    while pending:
        a, b, depth = pending.pop()
        panels += 1
        if panels > max_panels:
            raise AccuracyError("panel budget exhausted on the real line",
                                best=QuadratureResult(BigComplex.of(total, 30), err, evals))
        env = max(log10_env(a), log10_env(b), log10_env(0.5 * (a + b)))
        digits = env - log10_tol
        if digits <= 0:
            # negligible panel: its contribution is bounded by the envelope
            with mp.workdps(acc_dps):
                err += mp.mpf(10) ** env * (b - a)
            continue
        span = (b - a) * max(rate(a), rate(b), rate(0.5 * (a + b)))
        n = _rung(int(0.62 * digits + 0.45 * span + 8))
        n2 = _next_rung(n)
        dps = int(digits + guard + math.log10(1 + abs(b) + span))
        dps = max(dps, 30)
        v1 = gl_panel(fn, a, b, n, dps)
        v2 = gl_panel(fn, a, b, n2, dps)
        evals += n + n2
        with mp.workdps(dps):
            d = abs(v2 - v1)
        if d > tol_abs * max((b - a) / length, 1e-3) and depth < max_depth:
            m = 0.5 * (a + b)
            pending.append((m, b, depth + 1))
            pending.append((a, m, depth + 1))
            continue
        with mp.workdps(acc_dps):
            total += v2
            err += d
    return total, err, evals
