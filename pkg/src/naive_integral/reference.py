"""Published reference values and printed truncated expansions.

Values are kept as decimal strings exactly as published.  The printed
expansions are closed forms in ``tau`` (and, for the correction factors,
in the ``A_n``, ``B_n`` values); each is paired with the first exponent it
leaves out.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

# J-components at t = 1000 (tau = sqrt(2 pi / 1000))
T1000 = {
    "J0": ("-319.76248420342571671", "-1.02579761304794517"),
    "J1": ("-0.05168313643128113065585765", "-0.03340921720926301938390691"),
    "J2": ("78.07970774521689754364494", "-10.25770863057151828557739"),
    "J3": ("0.2647574910872026449990598", "0.0894564497179051642560343"),
    "J4": ("-398.0552663032985357719259", "9.1758637850149309735293"),
    "J5": ("9.875178129540771845045695e-21", "2.184235417038277932562643e-21"),
}

# J-components at tau = 1/100
TAU_0_01 = {
    "J0": ("-4374.3775328031826011", "7291.8275606814665335"),
    "J1": ("-2.912092702349396595101662e-20", "-2.964824098450459727389800e-19"),
    "J2": ("-247.5225899909764227411730", "-577.4737675485197328678266"),
    "J3": ("2.253839879398274199016479e-12", "-4.183940256870270401904834e-11"),
    "J4": ("-4126.854942812208432198568", "7869.301328230028105733987"),
    "J5": ("2.972203110707883327466376e-1337", "6.798356476800169197964932e-1337"),
}

# saddle-point expansions evaluated at tau = 1/100
ASYMPTOTIC_0_01 = {
    "J4": ("-4126.8549427460263959626901037", "7869.3013284421422271264692398"),
    "J2": ("-247.52258999098767254607433770", "-577.47376754856685343451669512"),
}

# upper-half-plane ramification points, six printed digits
RAMIFICATION = (
    ("0.95762", "0.691421"),
    ("-0.851115", "0.652642"),
    ("-0.633938", "0.010142"),
)

MINORANT_VALUES = {"q1": (Fraction(1, 2), "0.01068"), "q2": (Fraction(11, 40), "0.0154654")}


def value(pair, dps: int = 60) -> mp.mpc:
    with mp.workdps(dps):
        return mp.mpc(mp.mpf(pair[0]), mp.mpf(pair[1]))


def significant_digits(x, ref) -> float:
    """Number of matching significant digits of ``x`` against ``ref``."""
    err = abs(mp.mpmathify(x) - mp.mpmathify(ref))
    if err == 0:
        return float("inf")
    return float(-mp.log10(err / abs(ref)))


# -- printed truncations: name -> (callable(tau, ...), first omitted exponent) ----------

def _pi():
    return mp.pi


def q2_printed(tau):
    pi = _pi()
    return (0.5j * tau + 1j * tau**2 / 8 + (-4 + 17j * pi) * tau**3 / (64 * pi)
            + (-1 / (32 * pi) + 0.25j) * tau**4)


def a2_q1_printed(tau):
    pi = _pi()
    return (1 + 1j * tau**2 / (4 * pi) - tau**4 / (16 * pi**2)
            + (-mp.mpf(1) / 2 - 1j / (64 * pi**3)) * tau**6
            + (-400 + 1 / pi**4 - 128j / pi) * tau**8 / 256)


def a2_q2_printed(tau):
    pi = _pi()
    return (1 - tau + (-mp.mpf(31) / 32 - 3j / (8 * pi)) * tau**2
            + (-mp.mpf(3) / 16 + 1j / (4 * pi)) * tau**3
            + (-48 + 248j * pi + 1215 * pi**2) * tau**4 / (2048 * pi**2))


def b1_q2_printed(tau):
    pi = _pi()
    return (1 - 7 * tau / 8 - 7 * (25 * pi + 8j) * tau**2 / (128 * pi)
            + 7 * (17 * pi + 40j) * tau**3 / (1024 * pi)
            + 7 * (-192 + 1200j * pi + 3341 * pi**2) * tau**4 / (32768 * pi**2))


def e_q1_printed(tau):
    pi = _pi()
    return (1 + 1j * (8 * pi**2 - 1) * tau**2 / (32 * pi)
            + (-mp.mpf(7) / 128 + 13 / (6144 * pi**2) + 1j * pi / 4 - pi**2 / 32) * tau**4)


def e_q2_printed(tau):
    pi = _pi()
    return (1 + (mp.mpf(1) / 8 - 47j * pi / 96) * tau
            + (144 - 3432j * pi - 2209 * pi**2) * tau**2 / 18432)


def f_q1_printed(tau, A):
    """Correction factor at ``q1`` from the values ``A[n]``, ``n = 2..6``."""
    pi = _pi()
    A2, A3, A4, A5, A6 = (A[n] for n in range(2, 7))
    c2 = 3j * A4 / (4 * pi * A2**2) - 5j * A3**2 / (6 * pi * A2**3)
    c4 = (-385 * A3**4 / (72 * pi**2 * A2**6) + 105 * A4 * A3**2 / (8 * pi**2 * A2**5)
          - 7 * A5 * A3 / (pi**2 * A2**4) - 105 * A4**2 / (32 * pi**2 * A2**4)
          + 5 * A6 / (2 * pi**2 * A2**3))
    return 1 + c2 * tau**2 + c4 * tau**4


def f_q2_printed(tau, A, B):
    """Correction factor at ``q2`` from ``A[n]`` (``n = 2..6``) and ``B[n]`` (``n = 0..4``)."""
    pi = _pi()
    A2, A3, A4, A5, A6 = (A[n] for n in range(2, 7))
    B0, B1, B2, B3, B4 = (B[n] for n in range(5))
    c1 = (-15j * A3 * B1 / (4 * pi * A2**2 * B0) + 35j * B2 / (8 * pi * A2 * B0)
          + 15j * A3**2 / (8 * pi * A2**3) - 3j * A4 / (2 * pi * A2**2))
    c2 = (1575 * A3**3 * B1 / (32 * pi**2 * A2**5 * B0) - 3675 * A3**2 * B2 / (64 * pi**2 * A2**4 * B0)
          - 525 * A4 * A3 * B1 / (8 * pi**2 * A2**4 * B0) + 1575 * A3 * B3 / (32 * pi**2 * A2**3 * B0)
          + 75 * A5 * B1 / (4 * pi**2 * A2**3 * B0) + 525 * A4 * B2 / (16 * pi**2 * A2**3 * B0)
          - 3465 * B4 / (128 * pi**2 * A2**2 * B0) - 3465 * A3**4 / (128 * pi**2 * A2**6)
          + 945 * A4 * A3**2 / (16 * pi**2 * A2**5) - 105 * A5 * A3 / (4 * pi**2 * A2**4)
          - 105 * A4**2 / (8 * pi**2 * A2**4) + 15 * A6 / (2 * pi**2 * A2**3))
    return 1 + c1 * tau + c2 * tau**2


# printed closed forms in tau alone, with the first exponent they omit
PRINTED_SERIES = {
    ("q", "q2", 0): (q2_printed, Fraction(5)),
    ("A", "q1", 2): (a2_q1_printed, Fraction(10)),
    ("A", "q2", 2): (a2_q2_printed, Fraction(5)),
    ("B", "q2", 1): (b1_q2_printed, Fraction(5)),
    ("E", "q1", 0): (e_q1_printed, Fraction(6)),
    ("E", "q2", 0): (e_q2_printed, Fraction(3)),
}
