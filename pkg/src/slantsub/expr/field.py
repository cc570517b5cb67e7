"""Exact arithmetic in the quadratic field Q[sqrt(d)]."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

DEFAULT_D = 2


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class FieldElem:
    """The number ``a + b*sqrt(d)`` with rational ``a`` and ``b``.

    Instances are immutable.  Elements built with different radicands may only
    be mixed when at least one of them is rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = DEFAULT_D):
        if not _is_square_free(d):
            raise ValueError(f"radicand must be a square-free integer >= 2, got {d}")
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "FieldElem":
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.d = d
        return obj

    @classmethod
    def sqrt_d(cls, d: int = DEFAULT_D) -> "FieldElem":
        return cls(0, 1, d)

    @classmethod
    def coerce(cls, x, d: int = DEFAULT_D) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw(Fraction(x), Fraction(0), d)
        if isinstance(x, Rational):
            return cls._raw(Fraction(x.numerator, x.denominator), Fraction(0), d)
        if isinstance(x, str):
            return cls._raw(Fraction(x), Fraction(0), d)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q[sqrt(d)]")

    # -- helpers -----------------------------------------------------------

    def _join(self, other: "FieldElem") -> int:
        if self.d == other.d:
            return self.d
        if not other.b:
            return self.d
        if not self.b:
            return other.d
        raise ValueError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")

    @property
    def is_rational(self) -> bool:
        return not self.b

    def conjugate(self) -> "FieldElem":
        return FieldElem._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2``; zero only for the zero element."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "FieldElem":
        nrm = self.norm()
        if not nrm:
            raise ZeroDivisionError("inverse of zero in Q[sqrt(d)]")
        return FieldElem._raw(self.a / nrm, -self.b / nrm, self.d)

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(d)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d*b^2
        if self.a * self.a > self.d * self.b * self.b:
            return sa
        return sb

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if type(other) is FieldElem:
            return FieldElem._raw(self.a + other.a, self.b + other.b, self._join(other))
        if isinstance(other, (int, Fraction)):
            return FieldElem._raw(self.a + other, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if type(other) is FieldElem:
            return FieldElem._raw(self.a - other.a, self.b - other.b, self._join(other))
        if isinstance(other, (int, Fraction)):
            return FieldElem._raw(self.a - other, self.b, self.d)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem._raw(other - self.a, -self.b, self.d)
        return NotImplemented

    def __mul__(self, other):
        if type(other) is FieldElem:
            d = self._join(other)
            if not self.b:
                return FieldElem._raw(self.a * other.a, self.a * other.b, d)
            if not other.b:
                return FieldElem._raw(self.a * other.a, self.b * other.a, d)
            return FieldElem._raw(
                self.a * other.a + d * self.b * other.b,
                self.a * other.b + self.b * other.a,
                d,
            )
        if isinstance(other, (int, Fraction)):
            return FieldElem._raw(self.a * other, self.b * other, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is FieldElem:
            if not other.b:
                if not other.a:
                    raise ZeroDivisionError("division by zero in Q[sqrt(d)]")
                return FieldElem._raw(self.a / other.a, self.b / other.a, self._join(other))
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q[sqrt(d)]")
            return FieldElem._raw(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElem._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison and conversion ----------------------------------------

    def __eq__(self, other):
        if type(other) is FieldElem:
            return self.a == other.a and self.b == other.b and (not self.b or self.d == other.d)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __repr__(self):
        return f"FieldElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return format_field(self)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_field(c: FieldElem) -> str:
    """Render in the scenario grammar (``sqrt_d`` stands for the radical)."""
    if not c.b:
        return _fmt_rational(c.a)
    if c.b == 1:
        irr = "sqrt_d"
    elif c.b == -1:
        irr = "-sqrt_d"
    else:
        irr = f"{_fmt_rational(c.b)}*sqrt_d"
    if not c.a:
        return irr
    if irr.startswith("-"):
        return f"{_fmt_rational(c.a)} - {irr[1:]}"
    return f"{_fmt_rational(c.a)} + {irr}"


def to_field(x, d: int = DEFAULT_D) -> FieldElem:
    return FieldElem.coerce(x, d)


ZERO = FieldElem(0)
ONE = FieldElem(1)
