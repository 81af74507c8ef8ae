"""Exact scalar domains: rationals, the degree-2 cyclotomic field Q(z6), prime fields.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
Q(z6) is represented as a + b*z6 with z6 a primitive 6th root of unity,
subject to z6^2 = z6 - 1.  Prime-field scalars are plain ints reduced mod a
fixed prime; the bulk prime-field work lives in `modular.py`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

QQ = Fraction

#: numeric value of z6 = exp(i*pi/3) = 1/2 + (sqrt(3)/2) i
Z6_COMPLEX = complex(0.5, 3.0 ** 0.5 / 2.0)


def parse_rational(s):
    """Parse 'p/q' or 'p' into a Fraction."""
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class Cyclo6:
    """Element a + b*z6 of Q(z6), with z6^2 = z6 - 1."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Cyclo6":
        if isinstance(x, Cyclo6):
            return x
        return Cyclo6(Fraction(x), Fraction(0))

    @staticmethod
    def zeta(power: int = 1) -> "Cyclo6":
        """z6**power for any integer power."""
        out = Cyclo6(Fraction(1), Fraction(0))
        z = Cyclo6(Fraction(0), Fraction(1))
        for _ in range(power % 6):
            out = out * z
        return out

    def __add__(self, other):
        other = Cyclo6.of(other)
        return Cyclo6(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo6(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Cyclo6.of(other))

    def __rsub__(self, other):
        return Cyclo6.of(other) + (-self)

    def __mul__(self, other):
        other = Cyclo6.of(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = z - 1
        return Cyclo6(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo6":
        """Complex conjugate: conj(z6) = 1 - z6."""
        return Cyclo6(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 + ab + b^2 (equals |x|^2)."""
        return self.a * self.a + self.a * self.b + self.b * self.b

    def inv(self) -> "Cyclo6":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(z6)")
        c = self.conj()
        return Cyclo6(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * Cyclo6.of(other).inv()

    def __rtruediv__(self, other):
        return Cyclo6.of(other) * self.inv()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        return complex(self.a) + complex(self.b) * Z6_COMPLEX

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*z6"
        return f"{self.a}+{self.b}*z6"


CYCLO_ZERO = Cyclo6()
CYCLO_ONE = Cyclo6(Fraction(1), Fraction(0))


class PrimeField:
    """Arithmetic mod a fixed prime.  Values are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, min(p, 1 << 10)) if q * q <= p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def elem(self, x: int) -> int:
        return x % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero mod p")
        return pow(x, self.p - 2, self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_near(start: int, count: int) -> list[int]:
    """The first `count` primes >= start."""
    out = []
    n = start | 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 2
    return out


#: working primes for modular rank.  They sit just below 2^21 so that a
#: 1024-long accumulation of products stays below 2^53 (exact in float64).
MODULAR_PRIMES = primes_near((1 << 21) - 3000, 24)

#: a large prime (> 2^60) for scalar PrimeField use and slow-path checks
BIG_PRIME = primes_near((1 << 60) + 7, 1)[0]
