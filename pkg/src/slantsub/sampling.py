"""Seeded sample points and random polynomial fields for residual checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .expr import FieldElem, Point, Poly

_DENOMS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16)


@dataclass(frozen=True)
class CheckConfig:
    """Sampling policy and tolerances shared by every check.

    ``tol_first`` applies to float checks that involve first derivatives,
    ``tol_second`` to curvature-bearing float checks.  Exact-mode checks
    demand literal zero regardless.
    """

    samples: int = 7
    seed: int = 42
    mode: str = "exact"
    field_pairs: int = 10
    field_degree: int = 2
    tol_first: float = 1e-9
    tol_second: float = 1e-6
    tol_frame: float = 1e-8
    angle_eps: float = 1e-6
    slant_samples: int = 25

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.samples < 1:
            raise ValueError("samples must be positive")

    def tol(self, kind: str = "first") -> float:
        if self.mode == "exact":
            return 0.0
        return self.tol_second if kind == "second" else self.tol_first

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


def random_rational(rng: random.Random, lo=-2, hi=2, max_den=16) -> Fraction:
    den = rng.choice(_DENOMS[:max_den])
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def sample_points(dim: int, count: int = 7, seed: int = 42, mode: str = "exact"):
    """Origin, the point (1/2, ..., 1/2), then seeded rational points in
    [-2, 2]^dim with denominators at most 16."""
    rng = random.Random(f"points:{seed}:{dim}")
    pts = [tuple(Fraction(0) for _ in range(dim)), tuple(Fraction(1, 2) for _ in range(dim))]
    while len(pts) < count:
        pts.append(tuple(random_rational(rng) for _ in range(dim)))
    pts = pts[:count]
    return [Point(p, mode) for p in pts]


def random_poly(variables, rng: random.Random, degree: int = 2, density: float = 0.5) -> Poly:
    n = len(variables)
    terms = {}
    for deg in range(degree + 1):
        for combo in combinations_with_replacement(range(n), deg):
            if deg and rng.random() > density:
                continue
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            c = Fraction(rng.randint(-3, 3), rng.choice((1, 2, 4)))
            if c:
                terms[tuple(exps)] = FieldElem(c)
    return Poly(variables, terms)


def random_field(chart, rng: random.Random, degree: int = 2, density: float = 0.35):
    from .geometry import VectorField

    return VectorField(chart, [random_poly(chart.var_names, rng, degree, density) for _ in range(chart.dim)])


def random_vector(dim: int, rng: random.Random):
    return [FieldElem(random_rational(rng, -2, 2, 8)) for _ in range(dim)]
