"""Exact scalars: rationals and the quadratic field Q(sqrt 2)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(s: str) -> Fraction:
    """Parse "p", "p/q" or "-p/q". Floats are rejected."""
    s = s.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QSqrt2:
    """Element a + b*sqrt(2) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = frac(a)
        self.b = frac(b)

    @classmethod
    def coerce(cls, x) -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        p = self * o.conjugate()
        return QSqrt2(p.a / n, p.b / n)

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) / self

    def __eq__(self, other):
        o = QSqrt2.coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QSqrt2({format_rational(self.a)}, {format_rational(self.b)})"


SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))


def format_scalar(x):
    if isinstance(x, QSqrt2):
        return {"a": format_rational(x.a), "b": format_rational(x.b)}
    return format_rational(x)


def parse_scalar(obj):
    if isinstance(obj, dict):
        return QSqrt2(parse_rational(obj["a"]), parse_rational(obj["b"]))
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, str):
        return parse_rational(obj)
    raise ValueError(f"cannot parse scalar from {obj!r}")
