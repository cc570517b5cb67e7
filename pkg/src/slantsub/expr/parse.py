"""Text form of polynomials used in scenario files.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | 'sqrt_d' | NAME | '(' expr ')'

``**`` is accepted as a synonym for ``^``.  :func:`format_poly` prints the
canonical form, and ``parse_poly(format_poly(p)) == p`` for every polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import FieldElem, format_field
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", text, col)
        num, name, op = m.groups()
        start = m.start(1) if num else m.start(2) if name else m.start(3)
        if num:
            tokens.append(("num", num, start))
        elif name:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables, d: int):
        self.text = text
        self.variables = tuple(variables)
        self.d = d
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.factor()
        if self.peek()[:2] == ("op", "/"):
            self.fail("division is only allowed inside rational literals p/q")
        return p

    def factor(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num" or "." in tok[1]:
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            q = Fraction(val)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.fail("expected a denominator literal", den)
                if Fraction(den[1]) == 0:
                    self.fail("zero denominator in rational literal", den)
                q = q / Fraction(den[1])
            return Poly.constant(FieldElem(q, 0, self.d), self.variables)
        if kind == "name":
            if val == "sqrt_d":
                return Poly.constant(FieldElem(0, 1, self.d), self.variables)
            if val not in self.variables:
                self.fail(f"unknown variable {val!r}", tok)
            return Poly.var(val, self.variables)
        if kind == "op" and val == "(":
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return p
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected token {val!r}", tok)


def parse_poly(text, variables, d: int = 2) -> Poly:
    """Parse ``text`` into a polynomial over the given chart variables.

    Numbers (int, Fraction) are accepted as constants so JSON numbers work.
    """
    if isinstance(text, bool):
        raise ParseError("booleans are not expressions", str(text), 0)
    if isinstance(text, (int, Fraction)):
        return Poly.constant(text, variables)
    if isinstance(text, float):
        return Poly.constant(Fraction(text), variables)
    if not isinstance(text, str):
        raise ParseError(f"expected an expression string, got {type(text).__name__}", str(text), 0)
    return _Parser(text, variables, d).parse()


def _monomial(exps, variables) -> str:
    parts = []
    for v, k in zip(variables, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
        c = p.terms[exps]
        mono = _monomial(exps, p.variables)
        if c.b and c.a:
            body = f"({format_field(c)})"
            neg = False
            if mono:
                body += "*" + mono
        else:
            val = c.a if not c.b else c.b
            neg = val < 0
            mag = -val if neg else val
            if c.b:
                coef = "sqrt_d" if mag == 1 else f"{_fmt_q(mag)}*sqrt_d"
                body = coef + ("*" + mono if mono else "")
            elif mono:
                body = mono if mag == 1 else f"{_fmt_q(mag)}*{mono}"
            else:
                body = _fmt_q(mag)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
