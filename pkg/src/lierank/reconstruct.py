"""Recover exact rationals and Q(z6) elements from floating-point values.

Continued fractions suffice here: every target scalar lies in the degree-2
field Q(z6), so the real and imaginary parts decompose against the basis
{1, z6} and each coordinate is a plain rational.  No lattice reduction
is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Cyclo6, Z6_COMPLEX


class NoConvergentError(ValueError):
    """No continued-fraction convergent satisfies the denominator bound."""


def rational_reconstruct(x: float, max_den: int) -> tuple[Fraction, float]:
    """Best CF convergent of x with denominator <= max_den, plus |error|.

    Walks the continued-fraction expansion of x, keeping the last convergent
    whose denominator stays within the bound.
    """
    if max_den < 1:
        raise NoConvergentError(f"max_den must be >= 1, got {max_den}")
    if abs(x) >= 2.0 ** 52:
        raise NoConvergentError("value too large for reliable reconstruction")
    # convergents p/q via the standard recurrence
    p_prev, q_prev = 1, 0
    p_cur, q_cur = int(_floor(x)), 1
    best = Fraction(p_cur, q_cur)
    frac = x - _floor(x)
    for _ in range(64):
        err = abs(float(best) - x)
        if err == 0.0 or frac == 0.0:
            break
        recip = 1.0 / frac
        a = int(_floor(recip))
        frac = recip - _floor(recip)
        p_next = a * p_cur + p_prev
        q_next = a * q_cur + q_prev
        if q_next > max_den:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_next, q_next
        best = Fraction(p_cur, q_cur)
    return best, abs(float(best) - x)


def _floor(x: float) -> float:
    return float(int(x)) if x >= 0 or x == int(x) else float(int(x) - 1)


def cyclo_reconstruct(z: complex, max_den: int) -> tuple[Cyclo6, float]:
    """Recover a + b*z6 from a complex double; returns (value, round-trip error).

    b is reconstructed from Im(z)/Im(z6), then a from Re(z) - b/2,
    since z6 = 1/2 + Im(z6) i.
    """
    z = complex(z)
    b, _ = rational_reconstruct(z.imag / Z6_COMPLEX.imag, max_den)
    a, _ = rational_reconstruct(z.real - float(b) / 2.0, max_den)
    val = Cyclo6(a, b)
    return val, abs(val.to_complex() - z)
