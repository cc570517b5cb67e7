from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slantsub.expr import (
    EvaluationError,
    FieldElem,
    ParseError,
    Point,
    Poly,
    RatFun,
    det,
    format_poly,
    inverse,
    nullspace,
    parse_poly,
    rank,
    rref,
    solve_linear,
)

VARS = ("x1", "x2", "y1")

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
field_elems = st.builds(FieldElem, fractions, fractions)


def test_sqrt2_squares_to_two():
    r = FieldElem.sqrt_d()
    assert r * r == 2
    assert (1 + r) * (1 - r) == -1


def test_field_division_and_sign():
    a = FieldElem(1, 1)
    assert a * a.inverse() == 1
    assert FieldElem(-2, 2).sign() == 1
    assert FieldElem(-3, 2).sign() == -1  # 2*sqrt2 < 3
    assert FieldElem(3, -2).sign() == 1
    with pytest.raises(ZeroDivisionError):
        FieldElem(0) / FieldElem(0)


@given(field_elems, field_elems, field_elems)
def test_field_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    if b:
        assert (a / b) * b == a


@given(field_elems)
def test_float_conversion_matches_value(a):
    assert float(a) == pytest.approx(float(a.a) + float(a.b) * 2**0.5)


def test_parse_basic_expression():
    p = parse_poly("x1 - 2*sqrt_d*x2 + y1", VARS)
    assert p.evaluate(Point.exact(1, 1, 1)) == FieldElem(2, -2)


def test_parse_rational_powers_and_parentheses():
    p = parse_poly("(x1 + 1/2)^2 - x1^2", VARS)
    assert p == parse_poly("x1 + 1/4", VARS)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x1 + * y1", VARS)
    assert exc.value.position == 5


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable 'w'") as exc:
        parse_poly("x1 + w", VARS)
    assert exc.value.position == 5


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        exps = tuple(draw(st.integers(0, 3)) for _ in VARS)
        terms[exps] = FieldElem(draw(fractions), draw(fractions))
    return Poly(VARS, terms)


@settings(max_examples=60)
@given(polys())
def test_print_parse_round_trip(p):
    assert parse_poly(format_poly(p), VARS) == p


@settings(max_examples=40)
@given(polys(), polys())
def test_product_rule(p, q):
    assert (p * q).differentiate("x1") == p.differentiate("x1") * q + p * q.differentiate("x1")


def test_ratfun_detects_exact_division():
    x = Poly.var("x1", VARS)
    r = RatFun(x * x - 1, x - 1)
    assert r.is_polynomial()
    assert r.as_poly() == x + 1


def test_ratfun_pole_raises():
    x = Poly.var("x1", VARS)
    r = RatFun(Poly.constant(1, VARS), x)
    with pytest.raises(EvaluationError):
        r.evaluate(Point.exact(0, 1, 1))
    assert r.evaluate(Point.exact(2, 0, 0)) == Fraction(1, 2)


def test_float_points_evaluate_in_float():
    p = parse_poly("sqrt_d*x1", VARS)
    assert p.evaluate(Point((1.0, 0.0, 0.0), "float")) == pytest.approx(2**0.5)


def test_rref_and_nullspace_exact():
    s = FieldElem.sqrt_d()
    A = [[FieldElem(1), -2 * s, FieldElem(1)], [FieldElem(2), -2 * s, FieldElem(1)]]
    R, piv = rref(A)
    assert piv == [0, 1]
    (v,) = nullspace(A)
    assert all(sum((a * b for a, b in zip(row, v)), start=FieldElem(0)) == 0 for row in A)
    assert rank(A) == 2


def test_float_rank_threshold():
    A = [[1.0, 0.0], [0.0, 1e-12]]
    assert rank(A) == 1
    assert rank([[1.0, 0.0], [0.0, 1e-6]]) == 2


def test_det_inverse_solve():
    A = [[FieldElem(2), FieldElem(1)], [FieldElem(1), FieldElem(1)]]
    assert det(A) == 1
    Ai = inverse(A)
    assert Ai == [[1, -1], [-1, 2]]
    x, kernel = solve_linear(A, [FieldElem(3), FieldElem(2)])
    assert x == [1, 1]
    assert kernel == []
