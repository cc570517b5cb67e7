"""Charts, tensor fields, the Levi-Civita connection and curvature.

Fields carry Poly or RatFun components on a chart.  Connection and curvature
values are computed from exact symbolic Christoffel fields and evaluated at
points; an exact point gives exact results, a float point gives floats.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .expr import FieldElem, Point, Poly, RatFun, parse_poly
from .expr.errors import ChartMismatchError, EvaluationError
from .expr.linalg import det, inverse_expr

__all__ = [
    "Chart",
    "MetricField",
    "OneForm",
    "RankDeficiencyError",
    "SingularMetricError",
    "Tensor11",
    "VectorField",
    "christoffel",
    "covariant_derivative",
    "curvature",
    "curvature_at",
    "inner",
    "inner_at",
    "lie_bracket",
    "nabla_field",
    "orthonormalize",
    "ricci",
    "riemann_at",
]


class SingularMetricError(ValueError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class RankDeficiencyError(ValueError):
    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


class Chart:
    """Ordered coordinate names of a single chart."""

    def __init__(self, var_names: Sequence[str]):
        names = tuple(var_names)
        if not names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        self.var_names = names

    @property
    def dim(self) -> int:
        return len(self.var_names)

    def __eq__(self, other):
        return isinstance(other, Chart) and other.var_names == self.var_names

    def __hash__(self):
        return hash(self.var_names)

    def __repr__(self):
        return f"Chart({list(self.var_names)})"

    def poly(self, text) -> Poly:
        return parse_poly(text, self.var_names)

    def coord(self, name: str) -> Poly:
        return Poly.var(name, self.var_names)

    def const(self, value) -> Poly:
        return Poly.constant(value, self.var_names)

    @property
    def zero(self) -> Poly:
        return Poly.zero(self.var_names)

    def point(self, *coords, mode: str = "exact") -> Point:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Point(tuple(coords), mode)

    def basis_field(self, i: int) -> "VectorField":
        return VectorField(self, [self.const(1 if j == i else 0) for j in range(self.dim)])


def _as_expr(chart: Chart, x):
    if isinstance(x, (Poly, RatFun)):
        if x.variables != chart.var_names:
            raise ChartMismatchError(f"expression on {x.variables}, chart is {chart.var_names}")
        return x
    if isinstance(x, str):
        return chart.poly(x)
    return chart.const(x)


def _evaluate(e, pt):
    return e.evaluate(pt)


def _zero_scalar(pt):
    return 0.0 if getattr(pt, "mode", "exact") == "float" else FieldElem(0)


class VectorField:
    def __init__(self, chart: Chart, components):
        comps = tuple(_as_expr(chart, c) for c in components)
        if len(comps) != chart.dim:
            raise ValueError(f"vector field needs {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.components = comps

    def at(self, pt):
        return [c.evaluate(pt) for c in self.components]

    @cached_property
    def partials(self):
        """``partials[k][i]`` is the derivative of component k along coordinate i."""
        names = self.chart.var_names
        return [[c.differentiate(v) for v in names] for c in self.components]

    def derivative_at(self, pt):
        return [[d.evaluate(pt) for d in row] for row in self.partials]

    def _same(self, other):
        if other.chart != self.chart:
            raise ChartMismatchError("vector fields live on different charts")

    def __add__(self, other):
        self._same(other)
        return VectorField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._same(other)
        return VectorField(self.chart, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.components])

    def scale(self, f):
        """Multiply by a function (Poly/RatFun) or a constant."""
        f = _as_expr(self.chart, f) if isinstance(f, (Poly, RatFun, str)) else f
        return VectorField(self.chart, [f * a for a in self.components])

    def __mul__(self, f):
        return self.scale(f)

    __rmul__ = __mul__

    def apply_to(self, f):
        """Directional derivative X(f) of a function."""
        f = _as_expr(self.chart, f)
        total = self.chart.zero
        for comp, v in zip(self.components, self.chart.var_names):
            if not comp.is_zero():
                total = comp * f.differentiate(v) + total
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        return f"VectorField({[str(c) for c in self.components]})"


class OneForm:
    def __init__(self, chart: Chart, components):
        comps = tuple(_as_expr(chart, c) for c in components)
        if len(comps) != chart.dim:
            raise ValueError(f"one-form needs {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.components = comps

    def __call__(self, X: VectorField):
        total = self.chart.zero
        for a, b in zip(self.components, X.components):
            if not a.is_zero() and not b.is_zero():
                total = a * b + total
        return total

    def at(self, pt):
        return [c.evaluate(pt) for c in self.components]

    def pair_at(self, pt, v):
        return _dot(self.at(pt), v)

    def scale(self, c):
        return OneForm(self.chart, [c * a for a in self.components])


class Tensor11:
    """(1,1)-tensor field; ``matrix[i][j]`` is component i of the image of the
    j-th coordinate vector."""

    def __init__(self, chart: Chart, matrix):
        rows = [tuple(_as_expr(chart, x) for x in row) for row in matrix]
        if len(rows) != chart.dim or any(len(r) != chart.dim for r in rows):
            raise ValueError(f"(1,1)-tensor needs a {chart.dim}x{chart.dim} matrix")
        self.chart = chart
        self.matrix = tuple(rows)

    def __call__(self, X: VectorField) -> VectorField:
        out = []
        for row in self.matrix:
            acc = self.chart.zero
            for a, b in zip(row, X.components):
                if not a.is_zero() and not b.is_zero():
                    acc = a * b + acc
            out.append(acc)
        return VectorField(self.chart, out)

    def at(self, pt):
        return [[x.evaluate(pt) for x in row] for row in self.matrix]

    def apply_at(self, pt, v):
        return _matvec(self.at(pt), v)

    def __matmul__(self, other: "Tensor11") -> "Tensor11":
        n = self.chart.dim
        out = [[self.chart.zero for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = self.chart.zero
                for k in range(n):
                    a, b = self.matrix[i][k], other.matrix[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = a * b + acc
                out[i][j] = acc
        return Tensor11(self.chart, out)

    def __add__(self, other):
        return Tensor11(self.chart, [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        return Tensor11(self.chart, [[a - b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return Tensor11(self.chart, [[-a for a in r] for r in self.matrix])

    @classmethod
    def identity(cls, chart: Chart) -> "Tensor11":
        n = chart.dim
        return cls(chart, [[chart.const(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def outer(cls, X: VectorField, w: OneForm) -> "Tensor11":
        """The tensor ``w (x) X`` acting as ``Y -> w(Y) X``."""
        return cls(X.chart, [[x * a for a in w.components] for x in X.components])


def _dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _matvec(M, v):
    return [_dot(row, v) for row in M]


class MetricField:
    """Symmetric metric with polynomial components on a chart."""

    def __init__(self, chart: Chart, components):
        rows = [tuple(_as_expr(chart, x) for x in row) for row in components]
        n = chart.dim
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"metric needs a {n}x{n} matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"metric is not symmetric at ({i}, {j})")
        self.chart = chart
        self.components = tuple(rows)
        self._gamma_cache: dict = {}
        self._dgamma_cache: dict = {}
        self._riemann_cache: dict = {}

    def at(self, pt):
        return [[x.evaluate(pt) for x in row] for row in self.components]

    def inner(self, X: VectorField, Y: VectorField):
        return inner(self, X, Y)

    @cached_property
    def determinant_and_adjugate(self):
        from .expr.linalg import det_adjugate

        return det_adjugate([list(r) for r in self.components])

    @cached_property
    def inverse(self):
        """Symbolic inverse as RatFun entries (adjugate over determinant)."""
        D, adj = self.determinant_and_adjugate
        if D.is_zero():
            raise SingularMetricError("metric determinant vanishes identically")
        n = self.chart.dim
        return tuple(tuple(RatFun(adj[i][j], D) for j in range(n)) for i in range(n))

    def is_positive_definite(self, pt) -> bool:
        """Leading principal minors > 0 at ``pt`` (exact sign in exact mode)."""
        G = self.at(pt)
        for k in range(1, self.chart.dim + 1):
            m = det([row[:k] for row in G[:k]])
            if (m <= 0) if isinstance(m, float) else m.sign() <= 0:
                return False
        return True

    @cached_property
    def christoffel_field(self):
        """``[k][i][j]``: Gamma^k_ij as RatFun, symmetric in (i, j)."""
        n = self.chart.dim
        names = self.chart.var_names
        g = self.components
        dg = [[[g[i][j].differentiate(names[l]) for j in range(n)] for i in range(n)] for l in range(n)]
        # lower[l][i][j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
        half = FieldElem(1, 0) / 2
        lower = [[[None] * n for _ in range(n)] for _ in range(n)]
        for l in range(n):
            for i in range(n):
                for j in range(i, n):
                    val = (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]) * half
                    lower[l][i][j] = lower[l][j][i] = val
        D, adj = self.determinant_and_adjugate
        if D.is_zero():
            raise SingularMetricError("metric determinant vanishes identically")
        gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(i, n):
                    acc = self.chart.zero
                    for l in range(n):
                        a, b = adj[k][l], lower[l][i][j]
                        if not a.is_zero() and not b.is_zero():
                            acc = a * b + acc
                    gamma[k][i][j] = gamma[k][j][i] = RatFun(acc, D)
        return gamma

    @cached_property
    def christoffel_derivative_field(self):
        """``[a][k][i][j]``: partial_a Gamma^k_ij."""
        n = self.chart.dim
        names = self.chart.var_names
        G = self.christoffel_field
        out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for k in range(n):
                for i in range(n):
                    for j in range(i, n):
                        out[a][k][i][j] = out[a][k][j][i] = G[k][i][j].differentiate(names[a])
        return out

    def christoffel_at(self, pt):
        cached = self._gamma_cache.get(pt)
        if cached is not None:
            return cached
        n = self.chart.dim
        G = self.christoffel_field
        try:
            val = [[[None] * n for _ in range(n)] for _ in range(n)]
            for k in range(n):
                for i in range(n):
                    for j in range(i, n):
                        val[k][i][j] = val[k][j][i] = G[k][i][j].evaluate(pt)
        except EvaluationError as exc:
            raise SingularMetricError(f"metric is singular at {pt}", point=pt) from exc
        self._gamma_cache[pt] = val
        return val

    def christoffel_derivative_at(self, pt):
        cached = self._dgamma_cache.get(pt)
        if cached is not None:
            return cached
        n = self.chart.dim
        dG = self.christoffel_derivative_field
        val = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for k in range(n):
                for i in range(n):
                    for j in range(i, n):
                        val[a][k][i][j] = val[a][k][j][i] = dG[a][k][i][j].evaluate(pt)
        self._dgamma_cache[pt] = val
        return val


def inner(g: MetricField, X: VectorField, Y: VectorField):
    """g(X, Y) as a function on the chart."""
    n = g.chart.dim
    total = g.chart.zero
    for i in range(n):
        if X.components[i].is_zero():
            continue
        for j in range(n):
            gij = g.components[i][j]
            if gij.is_zero() or Y.components[j].is_zero():
                continue
            total = X.components[i] * gij * Y.components[j] + total
    return total


def inner_at(G, u, v):
    """``u^T G v`` for a metric matrix already evaluated at a point."""
    return _dot(u, _matvec(G, v))


def _vector_at(X, pt):
    return X.at(pt) if isinstance(X, VectorField) else list(X)


def christoffel(g: MetricField, pt):
    """Gamma^k_ij at ``pt`` as nested lists ``[k][i][j]``."""
    return g.christoffel_at(pt)


def covariant_derivative(g: MetricField, X, Y: VectorField, pt):
    """(nabla_X Y)(pt).  ``X`` may be a field or a vector at ``pt``."""
    if isinstance(X, VectorField) and X.chart != g.chart or Y.chart != g.chart:
        raise ChartMismatchError("fields and metric live on different charts")
    x = _vector_at(X, pt)
    y = Y.at(pt)
    G = g.christoffel_at(pt)
    n = g.chart.dim
    nz = [i for i in range(n) if x[i]]
    out = []
    for k in range(n):
        acc = _zero_scalar(pt)
        row = Y.partials[k]
        for i in nz:
            if not row[i].is_zero():
                acc = acc + x[i] * row[i].evaluate(pt)
        Gk = G[k]
        for i in nz:
            Gki = Gk[i]
            for j in range(n):
                if y[j] and Gki[j]:
                    acc = acc + Gki[j] * x[i] * y[j]
        out.append(acc)
    return out


def nabla_field(g: MetricField, X: VectorField, Y: VectorField) -> VectorField:
    """nabla_X Y as a symbolic vector field."""
    n = g.chart.dim
    G = g.christoffel_field
    comps = []
    for k in range(n):
        acc = X.apply_to(Y.components[k]) if not Y.components[k].is_zero() else g.chart.zero
        for i in range(n):
            if X.components[i].is_zero():
                continue
            for j in range(n):
                if Y.components[j].is_zero() or G[k][i][j].is_zero():
                    continue
                acc = G[k][i][j] * X.components[i] * Y.components[j] + acc
        comps.append(acc)
    return VectorField(g.chart, comps)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^k = X(Y^k) - Y(X^k)."""
    if X.chart != Y.chart:
        raise ChartMismatchError("vector fields live on different charts")
    return VectorField(X.chart, [X.apply_to(b) - Y.apply_to(a) for a, b in zip(X.components, Y.components)])


def curvature(g: MetricField, X: VectorField, Y: VectorField, Z: VectorField, pt):
    """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z at ``pt``.

    Computed from the fields themselves, i.e. by differentiating the symbolic
    fields nabla_Y Z and nabla_X Z.
    """
    a = covariant_derivative(g, X, nabla_field(g, Y, Z), pt)
    b = covariant_derivative(g, Y, nabla_field(g, X, Z), pt)
    c = covariant_derivative(g, lie_bracket(X, Y), Z, pt)
    return [p - q - r for p, q, r in zip(a, b, c)]


def riemann_at(g: MetricField, pt):
    """Components ``R[l][i][j][k]`` with R(d_i, d_j) d_k = R^l_ijk d_l."""
    cached = g._riemann_cache.get(pt)
    if cached is not None:
        return cached
    n = g.chart.dim
    G = g.christoffel_at(pt)
    dG = g.christoffel_derivative_at(pt)
    zero = _zero_scalar(pt)
    R = [[[[zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for l in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    acc = dG[i][l][j][k] - dG[j][l][i][k]
                    for m in range(n):
                        acc = acc + G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k]
                    R[l][i][j][k] = acc
                    R[l][j][i][k] = -acc
    g._riemann_cache[pt] = R
    return R


def curvature_at(g: MetricField, x, y, z, pt):
    """R(x,y)z from the component tensor, for vectors given at ``pt``."""
    R = riemann_at(g, pt)
    n = g.chart.dim
    out = []
    for l in range(n):
        acc = _zero_scalar(pt)
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                for k in range(n):
                    if z[k]:
                        acc = acc + R[l][i][j][k] * x[i] * y[j] * z[k]
        out.append(acc)
    return out


def ricci(g: MetricField, X, pt):
    """Covector S(X, .) where S(X, Y) is the trace of Z -> R(Z, X) Y."""
    x = _vector_at(X, pt)
    R = riemann_at(g, pt)
    n = g.chart.dim
    out = []
    for j in range(n):
        acc = _zero_scalar(pt)
        for k in range(n):
            for i in range(n):
                if x[i]:
                    acc = acc + R[k][k][i][j] * x[i]
        out.append(acc)
    return out


def orthonormalize(vectors, G, tol: float = 1e-10):
    """Gram-Schmidt against the metric matrix ``G`` (evaluated at a point).

    Works in float.  Raises RankDeficiencyError carrying the detected rank if
    the input vectors are dependent.
    """
    Gf = np.array([[float(x) for x in row] for row in G])
    basis: list[np.ndarray] = []
    for v in vectors:
        w = np.array([float(x) for x in v])
        scale = float(w @ Gf @ w)
        for _ in range(2):  # second pass for stability
            for e in basis:
                w = w - (e @ Gf @ w) * e
        nrm2 = float(w @ Gf @ w)
        if scale <= 0 or nrm2 <= tol * scale:
            M = np.array([[float(x) for x in u] for u in vectors])
            rank = int(np.linalg.matrix_rank(M, tol=np.sqrt(tol) * max(np.abs(M).max(), 1.0)))
            raise RankDeficiencyError(f"vectors are linearly dependent: rank {rank} < {len(vectors)}", rank)
        basis.append(w / np.sqrt(nrm2))
    return basis
