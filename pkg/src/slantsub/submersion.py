"""Riemannian submersions: splitting, O'Neill tensors, fibers and harmonicity.

The horizontal projector is materialized as a field,

    H = g^-1 J^T (J g^-1 J^T)^-1 J,    V = I - H,

where J is the Jacobian of the map.  Projected fields are then ordinary
(rational) vector fields, so the covariant derivatives appearing in the
O'Neill tensors are exact.  A pointwise tensor route built from V(p), dV(p)
and the Christoffel symbols at p serves frames with float coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .contact import ContactStructure
from .expr import FieldElem, Point, Poly, RatFun
from .expr.errors import EvaluationError
from .expr.linalg import inverse_expr, nullspace, rank
from .geometry import (
    Chart,
    MetricField,
    RankDeficiencyError,
    Tensor11,
    VectorField,
    covariant_derivative,
    inner_at,
    lie_bracket,
    orthonormalize,
)
from .report import CheckReport, magnitude
from .sampling import CheckConfig, random_field, random_rational, sample_points

__all__ = [
    "CheckReport",
    "FiberGeometry",
    "OneillTensors",
    "S1ViolationError",
    "SmoothMap",
    "Splitting",
    "SubmersionSetup",
    "check_oneill_identities",
    "check_riemannian",
    "fiber_geometry",
    "is_harmonic",
    "oneill_A",
    "oneill_T",
    "second_fundamental_form",
    "splitting_at",
    "tension",
]


class S1ViolationError(RankDeficiencyError):
    """The differential does not have maximal rank at a point."""

    def __init__(self, message, rank, point=None):
        super().__init__(message, rank)
        self.point = point


class SplittingError(ValueError):
    """The projector fields are not defined at a point (denominator vanishes)."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


def _simplify(e):
    if isinstance(e, RatFun) and e.is_polynomial():
        return e.as_poly()
    return e


def _zero(pt):
    return 0.0 if pt.mode == "float" else FieldElem(0)


def _mv(M, v, zero):
    out = []
    for row in M:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _scale(c, v):
    return [c * a for a in v]


def _dot(u, v, zero):
    acc = zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


class SmoothMap:
    """F: source chart -> target chart with polynomial components."""

    def __init__(self, source: Chart, target: Chart, components):
        comps = []
        for c in components:
            if isinstance(c, str):
                c = source.poly(c)
            elif not isinstance(c, Poly):
                c = source.const(c)
            if c.variables != source.var_names:
                raise ValueError("map component is not on the source chart")
            comps.append(c)
        if len(comps) != target.dim:
            raise ValueError(f"map needs {target.dim} components, got {len(comps)}")
        self.source = source
        self.target = target
        self.components = tuple(comps)

    @cached_property
    def jacobian(self):
        """``J[a][i]`` = d F^a / d x^i."""
        return [[c.differentiate(v) for v in self.source.var_names] for c in self.components]

    @cached_property
    def hessian(self):
        """``H[a][i][j]`` = d^2 F^a / d x^i d x^j."""
        names = self.source.var_names
        return [[[d.differentiate(v) for v in names] for d in row] for row in self.jacobian]

    def at(self, pt: Point) -> Point:
        return Point(tuple(c.evaluate(pt) for c in self.components), pt.mode)

    def jacobian_at(self, pt):
        return [[d.evaluate(pt) for d in row] for row in self.jacobian]

    def push(self, pt, v):
        """F_* v for a tangent vector at ``pt``."""
        return _mv(self.jacobian_at(pt), v, _zero(pt))


@dataclass
class Splitting:
    """Vertical/horizontal decomposition of the tangent space at a point."""

    point: Point
    rank: int
    vertical: list
    horizontal: list
    P_v: list
    P_h: list
    G: list

    def gram(self, vectors):
        return [[inner_at(self.G, u, v) for v in vectors] for u in vectors]

    @property
    def gram_vertical(self):
        return self.gram(self.vertical)

    @property
    def gram_horizontal(self):
        return self.gram(self.horizontal)

    def vertical_part(self, v):
        return _mv(self.P_v, v, _zero(self.point))

    def horizontal_part(self, v):
        return _mv(self.P_h, v, _zero(self.point))

    def is_vertical(self, v, tol=0.0) -> bool:
        return magnitude(self.horizontal_part(v)) <= tol

    def is_horizontal(self, v, tol=0.0) -> bool:
        return magnitude(self.vertical_part(v)) <= tol


class SubmersionSetup:
    """A map F from a (contact) metric chart to a target chart with metric."""

    def __init__(self, source, target_chart: Chart, target_metric: MetricField, fmap: SmoothMap, name: str = ""):
        if isinstance(source, ContactStructure):
            self.structure = source
            self.metric = source.g
        elif isinstance(source, MetricField):
            self.structure = None
            self.metric = source
        else:
            raise TypeError("source must be a ContactStructure or a MetricField")
        if fmap.source != self.metric.chart or fmap.target != target_chart:
            raise ValueError("map charts do not match the source and target")
        if target_metric.chart != target_chart:
            raise ValueError("target metric lives on a different chart")
        self.chart = self.metric.chart
        self.target_chart = target_chart
        self.target_metric = target_metric
        self.map = fmap
        self.name = name
        self._splits: dict = {}
        self._tensors: dict = {}
        self._dpv: dict = {}

    @property
    def m(self) -> int:
        return self.chart.dim

    @property
    def n(self) -> int:
        return self.target_chart.dim

    def require_structure(self) -> ContactStructure:
        if self.structure is None:
            raise ValueError("this check needs an almost contact structure on the source")
        return self.structure

    @cached_property
    def horizontal_projector(self) -> Tensor11:
        m, n = self.m, self.n
        J = self.map.jacobian
        ginv = [[_simplify(x) for x in row] for row in self.metric.inverse]
        zero = self.chart.zero
        # A = g^-1 J^T  (m x n), K = J A  (n x n)
        A = [[sum((ginv[i][k] * J[a][k] for k in range(m) if not J[a][k].is_zero()), start=zero) for a in range(n)] for i in range(m)]
        A = [[_simplify(x) for x in row] for row in A]
        K = [[sum((J[a][k] * A[k][b] for k in range(m) if not J[a][k].is_zero()), start=zero) for b in range(n)] for a in range(n)]
        try:
            Kinv = inverse_expr(K)
        except ZeroDivisionError as exc:
            raise S1ViolationError("differential is rank deficient everywhere", rank=None) from exc
        Kinv = [[_simplify(x) for x in row] for row in Kinv]
        AK = [[_simplify(sum((A[i][a] * Kinv[a][b] for a in range(n)), start=zero)) for b in range(n)] for i in range(m)]
        Ph = [[_simplify(sum((AK[i][b] * J[b][j] for b in range(n) if not J[b][j].is_zero()), start=zero)) for j in range(m)] for i in range(m)]
        return Tensor11(self.chart, Ph)

    @cached_property
    def vertical_projector(self) -> Tensor11:
        return Tensor11.identity(self.chart) - self.horizontal_projector

    def vertical(self, X: VectorField) -> VectorField:
        """The vertical field V X."""
        return self.vertical_projector(X)

    def horizontal(self, X: VectorField) -> VectorField:
        return self.horizontal_projector(X)

    def splitting(self, pt: Point) -> Splitting:
        cached = self._splits.get(pt)
        if cached is None:
            cached = self._splits[pt] = _build_splitting(self, pt)
        return cached

    def projector_derivative_at(self, pt: Point):
        """``dP[a][i][j]`` = d_a (V)_ij at ``pt``."""
        cached = self._dpv.get(pt)
        if cached is None:
            names = self.chart.var_names
            P = self.vertical_projector.matrix
            try:
                cached = [[[P[i][j].differentiate(v).evaluate(pt) for j in range(self.m)] for i in range(self.m)] for v in names]
            except EvaluationError as exc:
                raise SplittingError(f"projector is not smooth at {pt}", pt) from exc
            self._dpv[pt] = cached
        return cached

    def tensors(self, pt: Point) -> "OneillTensors":
        cached = self._tensors.get(pt)
        if cached is None:
            cached = self._tensors[pt] = OneillTensors(self, pt)
        return cached

    def xi_position(self, pt: Point) -> str:
        """'vertical', 'horizontal' or 'mixed' for the Reeb field at ``pt``."""
        S = self.require_structure()
        sp = self.splitting(pt)
        xi = S.xi.at(pt)
        tol = 0.0 if pt.mode == "exact" else 1e-10
        if sp.is_vertical(xi, tol):
            return "vertical"
        if sp.is_horizontal(xi, tol):
            return "horizontal"
        return "mixed"

    def target_point(self, pt: Point) -> Point:
        return self.map.at(pt)


def _build_splitting(setup: SubmersionSetup, pt: Point) -> Splitting:
    J = setup.map.jacobian_at(pt)
    r = rank(J)
    if r < setup.n:
        raise S1ViolationError(f"rank of dF is {r} < {setup.n} at {pt}", rank=r, point=pt)
    G = setup.metric.at(pt)
    vertical = nullspace(J, setup.m)
    if vertical:
        rows = [_mv(G, v, _zero(pt)) for v in vertical]
        horizontal = nullspace(rows, setup.m)
    else:
        horizontal = [[FieldElem(1) if i == j else FieldElem(0) for i in range(setup.m)] for j in range(setup.m)]
    if pt.mode == "float":
        vertical = [[float(x) for x in v] for v in vertical]
        horizontal = [[float(x) for x in v] for v in horizontal]
    try:
        Pv = setup.vertical_projector.at(pt)
        Ph = setup.horizontal_projector.at(pt)
    except EvaluationError as exc:
        raise SplittingError(f"projector is not defined at {pt}", pt) from exc
    return Splitting(pt, r, vertical, horizontal, Pv, Ph, G)


def splitting_at(setup: SubmersionSetup, pt: Point) -> Splitting:
    """Exact vertical and horizontal bases at ``pt``.

    Raises S1ViolationError carrying the rank when dF is not surjective.
    """
    return setup.splitting(pt)


class OneillTensors:
    """T and A at a point, from V(p), dV(p) and the Christoffel symbols.

    Both tensors are tensorial, so T_u w only depends on the vectors u, w;
    accepting float vectors makes this the route for orthonormal frames.
    """

    def __init__(self, setup: SubmersionSetup, pt: Point):
        self.setup = setup
        self.point = pt
        sp = setup.splitting(pt)
        self.Pv = sp.P_v
        self.Ph = sp.P_h
        self.dPv = setup.projector_derivative_at(pt)
        self.Gamma = setup.metric.christoffel_at(pt)
        self.G = sp.G
        self._float = None

    def _arrays(self):
        if self._float is None:
            f = np.vectorize(float, otypes=[float])
            self._float = (
                f(np.array(self.Pv, dtype=object)),
                f(np.array(self.Ph, dtype=object)),
                f(np.array(self.dPv, dtype=object)),
                f(np.array(self.Gamma, dtype=object)),
            )
        return self._float

    def _is_float(self, *vs):
        return self.point.mode == "float" or any(isinstance(x, float) for v in vs for x in v)

    def _parts(self, u, w, first):
        """Derivative data for the constant extension of w along u' = P u."""
        m = self.setup.m
        if self._is_float(u, w):
            Pv, Ph, dPv, Gam = self._arrays()
            u = np.array([float(x) for x in u])
            w = np.array([float(x) for x in w])
            P1 = Pv if first == "v" else Ph
            up = P1 @ u
            dP = np.tensordot(up, dPv, axes=(0, 0))  # d_{u'} V
            gam = lambda a, b: np.einsum("kij,i,j->k", Gam, a, b)
            vw, hw = Pv @ w, Ph @ w
            nabla_vw = dP @ w + gam(up, vw)
            nabla_hw = -dP @ w + gam(up, hw)
            return Pv, Ph, nabla_vw, nabla_hw
        zero = FieldElem(0)
        P1 = self.Pv if first == "v" else self.Ph
        up = _mv(P1, u, zero)
        dP = [[_dot(up, [self.dPv[a][i][j] for a in range(m)], zero) for j in range(m)] for i in range(m)]
        vw, hw = _mv(self.Pv, w, zero), _mv(self.Ph, w, zero)
        dPw = _mv(dP, w, zero)
        gv = [sum((self.Gamma[k][i][j] * up[i] * vw[j] for i in range(m) if up[i] for j in range(m) if vw[j]), start=zero) for k in range(m)]
        gh = [sum((self.Gamma[k][i][j] * up[i] * hw[j] for i in range(m) if up[i] for j in range(m) if hw[j]), start=zero) for k in range(m)]
        return self.Pv, self.Ph, _add(dPw, gv), _sub(gh, dPw)

    def T(self, u, w):
        """T_u w = H nabla_{Vu} Vw + V nabla_{Vu} Hw."""
        Pv, Ph, nv, nh = self._parts(u, w, "v")
        if isinstance(nv, np.ndarray):
            return list(Ph @ nv + Pv @ nh)
        zero = FieldElem(0)
        return _add(_mv(Ph, nv, zero), _mv(Pv, nh, zero))

    def A(self, u, w):
        """A_u w = V nabla_{Hu} Hw + H nabla_{Hu} Vw."""
        Pv, Ph, nv, nh = self._parts(u, w, "h")
        if isinstance(nv, np.ndarray):
            return list(Pv @ nh + Ph @ nv)
        zero = FieldElem(0)
        return _add(_mv(Pv, nh, zero), _mv(Ph, nv, zero))


def _vec(E, pt):
    return E.at(pt) if isinstance(E, VectorField) else list(E)


def oneill_T(setup: SubmersionSetup, E, F: VectorField, pt: Point):
    """T_E F = H nabla_{VE} VF + V nabla_{VE} HF, from the fields themselves.

    ``E`` may be a field or a vector at ``pt``; ``F`` must be a field (use
    ``setup.tensors(pt).T`` for vectors).
    """
    sp = setup.splitting(pt)
    z = _zero(pt)
    vE = _mv(sp.P_v, _vec(E, pt), z)
    a = covariant_derivative(setup.metric, vE, setup.vertical(F), pt)
    b = covariant_derivative(setup.metric, vE, setup.horizontal(F), pt)
    return _add(_mv(sp.P_h, a, z), _mv(sp.P_v, b, z))


def oneill_A(setup: SubmersionSetup, E, F: VectorField, pt: Point):
    """A_E F = V nabla_{HE} HF + H nabla_{HE} VF."""
    sp = setup.splitting(pt)
    z = _zero(pt)
    hE = _mv(sp.P_h, _vec(E, pt), z)
    a = covariant_derivative(setup.metric, hE, setup.horizontal(F), pt)
    b = covariant_derivative(setup.metric, hE, setup.vertical(F), pt)
    return _add(_mv(sp.P_v, a, z), _mv(sp.P_h, b, z))


def _random_fields(setup, config, salt, count=None, degree=None):
    rng = config.rng(salt)
    count = config.field_pairs if count is None else count
    degree = config.field_degree if degree is None else degree
    return [random_field(setup.chart, rng, degree) for _ in range(count)]


def check_riemannian(setup: SubmersionSetup, config: CheckConfig | None = None) -> CheckReport:
    """S1 (maximal rank) and S2 (horizontal isometry) at sample points."""
    config = config or CheckConfig()
    rep = CheckReport(
        "riemannian",
        "rank dF = dim N (S1) and g_M(X,Y) = g_N(F_*X, F_*Y) for horizontal X, Y (S2)",
        tolerance=config.tol("first"),
    )
    ranks = []
    for idx, pt in enumerate(sample_points(setup.m, config.samples, config.seed, config.mode)):
        try:
            sp = setup.splitting(pt)
        except S1ViolationError as exc:
            rep.require("S1", False)
            ranks.append(exc.rank)
            continue
        rep.require("S1", True)
        ranks.append(sp.rank)
        GN = setup.target_metric.at(setup.target_point(pt))
        J = setup.map.jacobian_at(pt)
        z = _zero(pt)
        pushed = [_mv(J, h, z) for h in sp.horizontal]
        res = [
            inner_at(sp.G, hi, hj) - inner_at(GN, pi, pj)
            for hi, pi in zip(sp.horizontal, pushed)
            for hj, pj in zip(sp.horizontal, pushed)
        ]
        rep.record("S2", res, idx)
    rep.evidence["ranks"] = ranks
    rep.evidence["target_dim"] = setup.n
    return rep.finalize()


def check_oneill_identities(setup: SubmersionSetup, config: CheckConfig | None = None, pairs: int | None = None) -> CheckReport:
    """Symmetry/alternation of T and A, skew-symmetry, and the four
    decompositions of nabla into vertical and horizontal parts."""
    config = config or CheckConfig()
    rep = CheckReport(
        "oneill",
        "T_U W = T_W U, A_X Y = -A_Y X = 1/2 V[X,Y], g(T_D E, G) = -g(T_D G, E), "
        "g(A_D E, G) = -g(A_D G, E), nabla split into T, A and projected parts",
        tolerance=config.tol("first"),
    )
    g = setup.metric
    pairs = pairs if pairs is not None else max(2, config.field_pairs // 2)
    fields = _random_fields(setup, config, "oneill", 3 * pairs, degree=1)
    triples = [fields[3 * k: 3 * k + 3] for k in range(pairs)]
    prepared = []
    for X, Y, Z in triples:
        U, W = setup.vertical(X), setup.vertical(Y)
        Xh, Yh = setup.horizontal(X), setup.horizontal(Y)
        prepared.append((X, Y, Z, U, W, Xh, Yh, lie_bracket(Xh, Yh)))
    half = 0.5 if config.mode == "float" else FieldElem(Fraction(1, 2))
    for idx, pt in enumerate(sample_points(setup.m, config.samples, config.seed, config.mode)):
        sp = setup.splitting(pt)
        G, z = sp.G, _zero(pt)
        for X, Y, Z, U, W, Xh, Yh, br in prepared:
            T_UW, T_WU = oneill_T(setup, U, W, pt), oneill_T(setup, W, U, pt)
            rep.record("T_symmetric", _sub(T_UW, T_WU), idx)
            A_XY, A_YX = oneill_A(setup, Xh, Yh, pt), oneill_A(setup, Yh, Xh, pt)
            rep.record("A_alternating", _add(A_XY, A_YX), idx)
            rep.record("A_bracket", _sub(A_XY, _scale(half, sp.vertical_part(br.at(pt)))), idx)
            x, y, zz = X.at(pt), Y.at(pt), Z.at(pt)
            rep.record(
                "T_skew",
                inner_at(G, oneill_T(setup, x, Y, pt), zz) + inner_at(G, oneill_T(setup, x, Z, pt), y),
                idx,
            )
            rep.record(
                "A_skew",
                inner_at(G, oneill_A(setup, x, Y, pt), zz) + inner_at(G, oneill_A(setup, x, Z, pt), y),
                idx,
            )
            u, xh = U.at(pt), Xh.at(pt)
            nVW = covariant_derivative(g, u, W, pt)
            rep.record("decomp_VV", _sub(nVW, _add(T_UW, sp.vertical_part(nVW))), idx)
            nVX = covariant_derivative(g, u, Xh, pt)
            rep.record("decomp_VH", _sub(nVX, _add(sp.horizontal_part(nVX), oneill_T(setup, u, Xh, pt))), idx)
            nXV = covariant_derivative(g, xh, U, pt)
            rep.record("decomp_HV", _sub(nXV, _add(oneill_A(setup, xh, U, pt), sp.vertical_part(nXV))), idx)
            nXY = covariant_derivative(g, xh, Yh, pt)
            rep.record("decomp_HH", _sub(nXY, _add(sp.horizontal_part(nXY), A_XY)), idx)
            # tensoriality: the pointwise route agrees with the field route
            tens = setup.tensors(pt)
            rep.record("pointwise_T", _sub(tens.T(x, y), oneill_T(setup, x, Y, pt)), idx)
            rep.record("pointwise_A", _sub(tens.A(x, y), oneill_A(setup, x, Y, pt)), idx)
    return rep.finalize()


@dataclass
class FiberGeometry:
    mean_curvature: list = field(default_factory=list)
    max_T_vertical: float = 0.0
    max_umbilical: float = 0.0
    totally_geodesic: bool = True
    totally_umbilical: bool = True
    minimal: bool = True
    vertical_dim: int = 0
    tol: float = 1e-8

    def to_report(self, name="fiber_geometry") -> CheckReport:
        rep = CheckReport(name, "mean curvature H, total geodesy, umbilicity and minimality of fibers")
        rep.evidence.update(
            mean_curvature=[[repr(float(x)) for x in h] for h in self.mean_curvature],
            totally_geodesic=self.totally_geodesic,
            totally_umbilical=self.totally_umbilical,
            minimal=self.minimal,
            vertical_dim=self.vertical_dim,
            max_T_vertical=repr(self.max_T_vertical),
            max_umbilical_residual=repr(self.max_umbilical),
        )
        return rep.finalize()


def fiber_geometry(setup: SubmersionSetup, config: CheckConfig | None = None, directions: int = 6) -> FiberGeometry:
    """Mean curvature over an orthonormal vertical frame, and the three
    fiber properties tested at sample points."""
    config = config or CheckConfig()
    tol = config.tol_frame
    out = FiberGeometry(tol=tol)
    rng = config.rng("umbilical")
    for pt in sample_points(setup.m, config.samples, config.seed, config.mode):
        sp = setup.splitting(pt)
        tens = setup.tensors(pt)
        out.vertical_dim = len(sp.vertical)
        if not sp.vertical:
            out.mean_curvature.append([0.0] * setup.m)
            continue
        # exact vertical pairs decide total geodesy
        for a in sp.vertical:
            for b in sp.vertical:
                out.max_T_vertical = max(out.max_T_vertical, magnitude(tens.T(a, b)))
        frame = orthonormalize(sp.vertical, sp.G)
        H = np.zeros(setup.m)
        for e in frame:
            H += np.array(tens.T(list(e), list(e)), dtype=float)
        H /= len(frame)
        out.mean_curvature.append(list(H))
        Gf = np.array([[float(x) for x in row] for row in sp.G])
        for _ in range(directions):
            c1 = [float(random_rational(rng)) for _ in sp.vertical]
            c2 = [float(random_rational(rng)) for _ in sp.vertical]
            U = sum(c * np.array([float(x) for x in v]) for c, v in zip(c1, sp.vertical))
            W = sum(c * np.array([float(x) for x in v]) for c, v in zip(c2, sp.vertical))
            res = np.array(tens.T(list(U), list(W)), dtype=float) - float(U @ Gf @ W) * H
            out.max_umbilical = max(out.max_umbilical, float(np.abs(res).max()))
        # U = W = each frame vector as well, which pins H under umbilicity
        for e in frame:
            res = np.array(tens.T(list(e), list(e)), dtype=float) - H
            out.max_umbilical = max(out.max_umbilical, float(np.abs(res).max()))
        if np.abs(H).max() > tol:
            out.minimal = False
    exact_zero = 0.0 if config.mode == "exact" else tol
    out.totally_geodesic = out.max_T_vertical <= exact_zero
    out.totally_umbilical = out.max_umbilical <= tol
    return out


def sff_tensor_at(setup: SubmersionSetup, pt: Point):
    """``B[a][i][j]`` with (nabla F_*)(X, Y)^a = B[a][i][j] X^i Y^j."""
    m, n = setup.m, setup.n
    z = _zero(pt)
    J = setup.map.jacobian_at(pt)
    Hs = [[[d.evaluate(pt) for d in row] for row in blk] for blk in setup.map.hessian]
    GM = setup.metric.christoffel_at(pt)
    GN = setup.target_metric.christoffel_at(setup.target_point(pt))
    B = [[[z] * m for _ in range(m)] for _ in range(n)]
    for a in range(n):
        for i in range(m):
            for j in range(i, m):
                acc = Hs[a][i][j]
                for b in range(n):
                    if not J[b][i]:
                        continue
                    for c in range(n):
                        if J[c][j] and GN[a][b][c]:
                            acc = acc + GN[a][b][c] * J[b][i] * J[c][j]
                for k in range(m):
                    if GM[k][i][j] and J[a][k]:
                        acc = acc - GM[k][i][j] * J[a][k]
                B[a][i][j] = B[a][j][i] = acc
    return B


def second_fundamental_form(setup: SubmersionSetup, X, Y, pt: Point):
    """(nabla F_*)(X, Y) as a target vector at F(pt)."""
    x, y = _vec(X, pt), _vec(Y, pt)
    B = sff_tensor_at(setup, pt)
    if any(isinstance(v, float) for v in x + y) or pt.mode == "float":
        Bf = np.array([[[float(v) for v in row] for row in blk] for blk in B])
        return list(np.einsum("aij,i,j->a", Bf, np.array(x, dtype=float), np.array(y, dtype=float)))
    z = FieldElem(0)
    return [sum((blk[i][j] * x[i] * y[j] for i in range(setup.m) if x[i] for j in range(setup.m) if y[j]), start=z) for blk in B]


def tension(setup: SubmersionSetup, pt: Point, exact_trace: bool = False):
    """tau = sum of (nabla F_*)(e_i, e_i) over a g-orthonormal frame.

    With ``exact_trace`` the trace is taken as g^ij B_ij instead, which is
    exact at exact points.
    """
    B = sff_tensor_at(setup, pt)
    if exact_trace:
        ginv = [[x.evaluate(pt) for x in row] for row in setup.metric.inverse]
        z = _zero(pt)
        m = setup.m
        return [sum((ginv[i][j] * blk[i][j] for i in range(m) for j in range(m) if ginv[i][j] and blk[i][j]), start=z) for blk in B]
    G = setup.metric.at(pt)
    coords = [[FieldElem(1) if i == j else FieldElem(0) for i in range(setup.m)] for j in range(setup.m)]
    frame = orthonormalize(coords, G)
    Bf = np.array([[[float(v) for v in row] for row in blk] for blk in B])
    return list(sum(np.einsum("aij,i,j->a", Bf, e, e) for e in frame))


def is_harmonic(setup: SubmersionSetup, config: CheckConfig | None = None, fibers: FiberGeometry | None = None) -> CheckReport:
    """Harmonicity from the tension field, cross-checked against minimal fibers."""
    config = config or CheckConfig()
    rep = CheckReport("harmonic", "tension tau(F) = 0, equivalently minimal fibers", tolerance=config.tol_frame)
    norms, exact = [], []
    for idx, pt in enumerate(sample_points(setup.m, config.samples, config.seed, config.mode)):
        tau = tension(setup, pt)
        nrm = float(np.linalg.norm(np.array(tau, dtype=float)))
        norms.append(nrm)
        rep.record("tension", nrm, idx)
        tau_exact = tension(setup, pt, exact_trace=True)
        exact.append(tau_exact)
        rep.record("tension_trace", tau_exact, idx)
    fibers = fibers or fiber_geometry(setup, config)
    harmonic = max(norms) <= config.tol_frame
    rep.evidence.update(
        tension_norms=[repr(x) for x in norms],
        tension_exact=exact,
        harmonic=harmonic,
        minimal_fibers=fibers.minimal,
        criteria_agree=harmonic == fibers.minimal,
    )
    if harmonic != fibers.minimal:
        rep.notes.append("tension criterion and minimal-fiber criterion disagree")
    return rep.finalize()
