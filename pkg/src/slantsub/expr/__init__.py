"""Exact expression substrate: Q[sqrt(d)], polynomials, rational functions."""

from .errors import (
    ChartMismatchError,
    EvaluationError,
    ExprError,
    ParseError,
    UnknownVariableError,
)
from .field import DEFAULT_D, FieldElem, format_field, to_field
from .linalg import det, det_adjugate, inverse, inverse_expr, nullspace, rank, rref, solve_linear
from .parse import format_poly, parse_poly
from .point import Point
from .poly import Poly, RatFun, differentiate, evaluate

__all__ = [
    "ChartMismatchError",
    "DEFAULT_D",
    "EvaluationError",
    "ExprError",
    "FieldElem",
    "ParseError",
    "Point",
    "Poly",
    "RatFun",
    "UnknownVariableError",
    "det",
    "det_adjugate",
    "differentiate",
    "evaluate",
    "format_field",
    "format_poly",
    "inverse",
    "inverse_expr",
    "nullspace",
    "parse_poly",
    "rank",
    "rref",
    "solve_linear",
    "to_field",
]
