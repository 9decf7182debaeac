"""Exact arithmetic in the field Q(sqrt 3).

Numbers of the form ``a + b*sqrt(3)`` with rational ``a`` and ``b`` are
closed under the four field operations, so every quantity in the planar
four-disc example (centers, velocities and inner products) can be carried
without rounding.  Ordering is decided exactly by comparing squares.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["Root3Scalar", "SQRT3", "is_exact", "to_float"]

_SQRT3_FLOAT = math.sqrt(3.0)


def _coerce(value):
    if isinstance(value, Root3Scalar):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return Root3Scalar(value, 0)
    return None


class Root3Scalar:
    """The number ``a + b*sqrt(3)`` with rational coefficients.

    Arithmetic with ``int`` and ``Fraction`` stays exact.  Mixing with a
    ``float`` degrades to a ``float`` result.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def from_quadruple(cls, quad):
        """Build from ``[a_num, a_den, b_num, b_den]``."""
        a_num, a_den, b_num, b_den = (int(q) for q in quad)
        return cls(Fraction(a_num, a_den), Fraction(b_num, b_den))

    def to_quadruple(self) -> list[int]:
        return [self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return float(self) + other
        return Root3Scalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return float(self) - other
        return Root3Scalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return other - float(self)
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return float(self) * other
        return Root3Scalar(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> Root3Scalar:
        return Root3Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 3 b^2`` (zero only for zero)."""
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return float(self) / other
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        n = o.norm()
        num = self * o.conjugate()
        return Root3Scalar(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return other / float(self)
        return o / self

    def __neg__(self):
        return Root3Scalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # ordering -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        diff = self.a * self.a - 3 * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def _cmp(self, other):
        o = _coerce(other)
        if o is None:
            f = float(self)
            return (f > other) - (f < other)
        return (self - o).sign()

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) == other
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT3_FLOAT

    def __repr__(self):
        return f"Root3Scalar({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt3"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt3"


SQRT3 = Root3Scalar(0, 1)


def is_exact(value) -> bool:
    """True for values carried exactly (ints, fractions, Root3Scalar)."""
    return isinstance(value, (Root3Scalar, int, Fraction))


def to_float(value) -> float:
    return float(value)
