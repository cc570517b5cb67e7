"""Multivariate polynomials and rational functions over Q[sqrt(d)].

Polynomials use a dense exponent-tuple map; charts in this package have at
most seven variables and low degree, so no sparse tricks are needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ChartMismatchError, EvaluationError, UnknownVariableError
from .field import FieldElem, to_field
from .point import Point

_F0 = Fraction(0)
_F1 = Fraction(1)


def _scalar(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem._raw(Fraction(x), _F0, 2)
    return None


class Poly:
    """Polynomial in an ordered tuple of chart variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms=None):
        self.variables = tuple(variables)
        clean = {}
        n = len(self.variables)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent {exps} does not match {n} variables")
            c = to_field(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def _make(cls, variables, terms) -> "Poly":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "Poly":
        return cls._make(tuple(variables), {})

    @classmethod
    def constant(cls, value, variables) -> "Poly":
        variables = tuple(variables)
        c = to_field(value)
        return cls._make(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name: str, variables) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariableError(f"unknown variable {name!r}; chart has {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._make(variables, {exps: FieldElem(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.variables), FieldElem(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading(self):
        """Lex-leading (exponent, coefficient) pair."""
        e = max(self.terms)
        return e, self.terms[e]

    def _check(self, other: "Poly"):
        if other.variables != self.variables:
            raise ChartMismatchError(f"{self.variables} vs {other.variables}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        c = _scalar(other)
        if c is None:
            return None
        return Poly.constant(c, self.variables)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly._make(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if not isinstance(other, Poly):
            c = _scalar(other)
            if c is None:
                return NotImplemented
            if not c:
                return Poly._make(self.variables, {})
            return Poly._make(self.variables, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._make(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFun)):
            return RatFun(self, other) if isinstance(other, Poly) else RatFun(self, Poly.constant(1, self.variables)) / other
        c = _scalar(other)
        if c is None:
            return NotImplemented
        return self * (FieldElem(1) / c)

    def __rtruediv__(self, other):
        c = _scalar(other)
        if c is None:
            return NotImplemented
        return RatFun(Poly.constant(c, self.variables), self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, RatFun):
            return other == self
        c = _scalar(other)
        if c is None:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus and evaluation ------------------------------------------

    def differentiate(self, var: str) -> "Poly":
        try:
            i = self.variables.index(var)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {var!r}; chart has {self.variables}") from None
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly._make(self.variables, terms)

    def evaluate(self, pt):
        """Exact value (FieldElem) at an exact point, float at a float point."""
        coords, mode = _coords(pt, len(self.variables))
        if mode == "float":
            total = 0.0
            for e, c in self.terms.items():
                v = float(c)
                for x, k in zip(coords, e):
                    if k:
                        v *= x ** k
                total += v
            return total
        if all(type(x) is Fraction for x in coords):
            acc_a = _F0
            acc_b = _F0
            d = 2
            for e, c in self.terms.items():
                m = _F1
                for x, k in zip(coords, e):
                    if k:
                        m *= x ** k
                acc_a += c.a * m
                if c.b:
                    acc_b += c.b * m
                    d = c.d
            return FieldElem._raw(acc_a, acc_b, d)
        total = FieldElem(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(coords, e):
                if k:
                    v = v * (x ** k)
            total = total + v
        return total

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Compose with a polynomial map (one polynomial per variable)."""
        if len(values) != len(self.variables):
            raise ValueError("substitution needs one value per variable")
        out = None
        for e, c in self.terms.items():
            term = None
            for v, k in zip(values, e):
                if k:
                    f = v ** k
                    term = f if term is None else term * f
            if term is None:
                term = Poly.constant(c, values[0].variables)
            else:
                term = term * c
            out = term if out is None else out + term
        if out is None:
            return Poly.zero(values[0].variables if values else ())
        return out

    def divide_exact(self, other: "Poly"):
        """Quotient when ``other`` divides ``self`` exactly, else None."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = other.leading()
        inv = FieldElem(1) / lc
        rem = self
        quot: dict = {}
        while not rem.is_zero():
            e, c = rem.leading()
            if any(a < b for a, b in zip(e, le)):
                return None
            qe = tuple(a - b for a, b in zip(e, le))
            qc = c * inv
            quot[qe] = qc
            rem = rem - Poly._make(self.variables, {qe: qc}) * other
        return Poly._make(self.variables, quot)

    def __repr__(self):
        from .parse import format_poly

        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)


def _coords(pt, n):
    if isinstance(pt, Point):
        coords, mode = pt.coords, pt.mode
    else:
        coords = tuple(pt)
        mode = "float" if any(isinstance(x, float) for x in coords) else "exact"
        if mode == "exact":
            coords = tuple(x if isinstance(x, FieldElem) else Fraction(x) for x in coords)
    if len(coords) != n:
        raise ValueError(f"point has {len(coords)} coordinates, chart has {n}")
    return coords, mode


class RatFun:
    """Quotient of two polynomials on the same chart.

    No general gcd is taken: constant denominators are folded into the
    numerator and exact polynomial quotients are detected, which keeps every
    fixture in this package polynomial in practice.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(1, num.variables)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * (FieldElem(1) / c)
            den = Poly.constant(1, num.variables)
        elif num.is_zero():
            den = Poly.constant(1, num.variables)
        else:
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, Poly.constant(1, num.variables)
            else:
                _, lc = den.leading()
                if lc != 1:
                    inv = FieldElem(1) / lc
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def variables(self):
        return self.num.variables

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("rational function has a non-constant denominator")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def _lift(self, other):
        if isinstance(other, RatFun):
            self.num._check(other.num)
            return other
        if isinstance(other, Poly):
            self.num._check(other)
            return RatFun._wrap(other)
        c = _scalar(other)
        if c is None:
            return None
        return RatFun._wrap(Poly.constant(c, self.variables))

    @classmethod
    def _wrap(cls, p: Poly) -> "RatFun":
        obj = object.__new__(cls)
        obj.num = p
        obj.den = Poly.constant(1, p.variables)
        return obj

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFun)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RatFun(self.den, self.num) ** (-k)
        return RatFun(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash((self.num, self.den))

    def differentiate(self, var: str) -> "RatFun":
        dn = self.num.differentiate(var)
        if self.den.is_constant():
            return RatFun._wrap(dn)
        dd = self.den.differentiate(var)
        return RatFun(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, pt):
        dv = self.den.evaluate(pt)
        if (dv == 0) if not isinstance(dv, float) else dv == 0.0:
            raise EvaluationError(f"denominator {self.den} vanishes", point=pt)
        nv = self.num.evaluate(pt)
        return nv / dv

    def __repr__(self):
        return f"RatFun({self.num!s} / {self.den!s})"


def differentiate(p, var: str):
    """Exact partial derivative of a Poly or RatFun."""
    return p.differentiate(var)


def evaluate(p, pt):
    """Evaluate a Poly or RatFun at a point (exact or float mode)."""
    return p.evaluate(pt)
