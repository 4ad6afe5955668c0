"""Exact Gaussian-rational arithmetic.

GRat stores (a + b*i)/d with plain integers a, b and d > 0, reduced so
gcd(a, b, d) = 1.  Integer-backed arithmetic keeps the ring's hot loops
fast; Fractions appear only at the API edge (re/im views, construction).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _split(v):
    """(numerator, denominator) for an int or Fraction."""
    if isinstance(v, int):
        return v, 1
    if isinstance(v, Fraction):
        return v.numerator, v.denominator
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


class GRat:
    """A Gaussian rational.  Immutable; all arithmetic is exact."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0, _raw=None):
        if _raw is not None:
            a, b, d = _raw
        else:
            an, ad = _split(re)
            bn, bd = _split(im)
            a, b, d = an * bd, bn * ad, ad * bd
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g > 1:
                a, b, d = a // g, b // g, d // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("GRat is immutable")

    @property
    def re(self):
        return Fraction(self.a, self.d)

    @property
    def im(self):
        return Fraction(self.b, self.d)

    def __add__(self, other):
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GRat(_raw=(self.a + other.a, self.b + other.b, d1))
        return GRat(_raw=(self.a * d2 + other.a * d1,
                          self.b * d2 + other.b * d1, d1 * d2))

    def __sub__(self, other):
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GRat(_raw=(self.a - other.a, self.b - other.b, d1))
        return GRat(_raw=(self.a * d2 - other.a * d1,
                          self.b * d2 - other.b * d1, d1 * d2))

    def __neg__(self):
        return GRat(_raw=(-self.a, -self.b, self.d))

    def __mul__(self, other):
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return GRat(_raw=(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2,
                          self.d * other.d))

    def inv(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero GRat")
        return GRat(_raw=(self.a * self.d, -self.b * self.d, n))

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = GR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return GRat(_raw=(self.a, -self.b, self.d))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        return (isinstance(other, GRat) and self.a == other.a
                and self.b == other.b and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def to_complex(self):
        return complex(self.a / self.d, self.b / self.d)

    def __repr__(self):
        if self.b == 0:
            return str(self.re)
        if self.a == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.b > 0 else '-'}{abs(self.im)}*i)"


GR_ZERO = GRat(0)
GR_ONE = GRat(1)
GR_I = GRat(0, 1)


def grat(re=0, im=0):
    return GRat(re, im)
