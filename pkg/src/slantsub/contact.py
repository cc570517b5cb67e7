"""Almost contact metric and Sasakian structures."""

from __future__ import annotations

from fractions import Fraction

from .expr import FieldElem
from .geometry import (
    Chart,
    MetricField,
    OneForm,
    Tensor11,
    VectorField,
    covariant_derivative,
    curvature_at,
    inner,
    inner_at,
    lie_bracket,
    ricci,
)
from .report import CheckReport
from .sampling import CheckConfig, random_field, sample_points


class StructureError(ValueError):
    pass


class ContactStructure:
    """(phi, xi, eta, g) on an odd-dimensional chart.

    ``frame`` optionally holds a phi-basis {E_1, ..., E_2n, xi}.
    """

    def __init__(self, chart: Chart, phi: Tensor11, xi: VectorField, eta: OneForm, g: MetricField, frame=None):
        for obj in (phi, xi, eta, g):
            if obj.chart != chart:
                raise StructureError("structure tensors live on different charts")
        self.chart = chart
        self.phi = phi
        self.xi = xi
        self.eta = eta
        self.g = g
        self.frame = frame

    @property
    def n(self) -> int:
        return (self.chart.dim - 1) // 2

    def require_odd(self):
        if self.chart.dim % 2 != 1:
            raise StructureError(f"almost contact structures need odd dimension, chart has {self.chart.dim}")

    def fundamental_form(self, X: VectorField, Y: VectorField):
        """Phi(X, Y) = g(X, phi Y)."""
        return inner(self.g, X, self.phi(Y))

    def d_eta(self, X: VectorField, Y: VectorField):
        """d eta(X, Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X, Y]))."""
        eta = self.eta
        val = X.apply_to(eta(Y)) - Y.apply_to(eta(X)) - eta(lie_bracket(X, Y))
        return val * FieldElem(Fraction(1, 2))

    def with_phi(self, phi: Tensor11) -> "ContactStructure":
        return ContactStructure(self.chart, phi, self.xi, self.eta, self.g)

    def with_eta(self, eta: OneForm) -> "ContactStructure":
        return ContactStructure(self.chart, self.phi, self.xi, eta, self.g)

    def with_metric(self, g: MetricField) -> "ContactStructure":
        return ContactStructure(self.chart, self.phi, self.xi, self.eta, g, self.frame)


def sasakian_chart(n: int) -> Chart:
    return Chart([f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"])


def standard_sasakian(n: int) -> ContactStructure:
    """The standard Sasakian structure on R^(2n+1), coordinates (x_i, y_i, z).

    eta = 1/2 (dz - sum y_i dx_i), xi = 2 d/dz, and phi maps the frame
    E_i = 2 d/dy_i, E_(n+i) = 2 (d/dx_i + y_i d/dz) by E_i -> E_(n+i),
    E_(n+i) -> -E_i, xi -> 0.  The metric is g = eta (x) eta + 1/4 sum
    (dx_i^2 + dy_i^2), for which {E_1, ..., E_2n, xi} is orthonormal.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    chart = sasakian_chart(n)
    dim = 2 * n + 1
    half = Fraction(1, 2)
    y = [chart.coord(f"y{i}") for i in range(1, n + 1)]
    zero = chart.zero

    eta_c = [y[i] * FieldElem(-half) for i in range(n)] + [zero] * n + [chart.const(half)]
    eta = OneForm(chart, eta_c)
    xi = VectorField(chart, [zero] * (dim - 1) + [chart.const(2)])

    phi = [[zero] * dim for _ in range(dim)]
    for j in range(n):
        phi[n + j][j] = chart.const(-1)  # phi d/dx_j = -d/dy_j
        phi[j][n + j] = chart.const(1)  # phi d/dy_j = d/dx_j + y_j d/dz
        phi[2 * n][n + j] = y[j]
    phi = Tensor11(chart, phi)

    quarter = FieldElem(Fraction(1, 4))
    g = [[eta_c[i] * eta_c[j] for j in range(dim)] for i in range(dim)]
    for i in range(2 * n):
        g[i][i] = g[i][i] + quarter
    g = MetricField(chart, g)

    frame = []
    for i in range(n):
        comps = [zero] * dim
        comps[n + i] = chart.const(2)
        frame.append(VectorField(chart, comps))
    for i in range(n):
        comps = [zero] * dim
        comps[i] = chart.const(2)
        comps[2 * n] = y[i] * 2
        frame.append(VectorField(chart, comps))
    frame.append(xi)
    return ContactStructure(chart, phi, xi, eta, g, frame)


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _scale(c, v):
    return [c * x for x in v]


def check_almost_contact(S: ContactStructure, config: CheckConfig | None = None, fields=None) -> CheckReport:
    """Residuals of the almost contact metric axioms and of d eta = Phi."""
    config = config or CheckConfig()
    S.require_odd()
    rep = CheckReport(
        "almost_contact",
        "phi^2 = -I + eta(x)xi, phi xi = 0, eta o phi = 0, eta(xi) = 1, "
        "g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y), eta(X) = g(X, xi), d eta = Phi",
        tolerance=config.tol("first"),
    )
    dim = S.chart.dim
    rng = config.rng("almost_contact")
    if fields is None:
        fields = [
            (random_field(S.chart, rng, config.field_degree), random_field(S.chart, rng, config.field_degree))
            for _ in range(config.field_pairs)
        ]
    d_eta_res = [S.fundamental_form(X, Y) - S.d_eta(X, Y) for X, Y in fields]
    for idx, pt in enumerate(sample_points(dim, config.samples, config.seed, config.mode)):
        P = S.phi.at(pt)
        xi = S.xi.at(pt)
        eta = S.eta.at(pt)
        G = S.g.at(pt)
        P2 = [[sum((P[i][k] * P[k][j] for k in range(dim)), start=0 * P[0][0]) for j in range(dim)] for i in range(dim)]
        phi2 = [[P2[i][j] + (1 if i == j else 0) - xi[i] * eta[j] for j in range(dim)] for i in range(dim)]
        rep.record("phi_squared", phi2, idx)
        rep.record("phi_xi", [sum((P[i][k] * xi[k] for k in range(dim)), start=0 * xi[0]) for i in range(dim)], idx)
        rep.record("eta_phi", [sum((eta[k] * P[k][j] for k in range(dim)), start=0 * xi[0]) for j in range(dim)], idx)
        rep.record("eta_xi", sum((a * b for a, b in zip(eta, xi)), start=0 * xi[0]) - 1, idx)
        # g(phi X, phi Y) - g(X, Y) + eta(X) eta(Y) as a matrix
        GP = [[sum((G[i][k] * P[k][j] for k in range(dim)), start=0 * xi[0]) for j in range(dim)] for i in range(dim)]
        PtGP = [[sum((P[k][i] * GP[k][j] for k in range(dim)), start=0 * xi[0]) for j in range(dim)] for i in range(dim)]
        rep.record(
            "compatibility",
            [[PtGP[i][j] - G[i][j] + eta[i] * eta[j] for j in range(dim)] for i in range(dim)],
            idx,
        )
        Gxi = [sum((G[i][k] * xi[k] for k in range(dim)), start=0 * xi[0]) for i in range(dim)]
        rep.record("eta_dual", _sub(eta, Gxi), idx)
        for r in d_eta_res:
            rep.record("d_eta_Phi", r.evaluate(pt), idx)
    return rep.finalize()


def check_sasakian(S: ContactStructure, config: CheckConfig | None = None, fields=None) -> CheckReport:
    """Residuals of the Sasakian identities for random field pairs."""
    config = config or CheckConfig()
    S.require_odd()
    rep = CheckReport(
        "sasakian",
        "(nabla_X phi)Y = g(X,Y)xi - eta(Y)X, nabla_X xi = -phi X, "
        "R(xi,X)Y = g(X,Y)xi - eta(Y)X, S(X,xi) = 2n eta(X)",
        tolerance=config.tol("second"),
    )
    dim = S.chart.dim
    n = S.n
    g = S.g
    rng = config.rng("sasakian")
    if fields is None:
        fields = [
            (random_field(S.chart, rng, config.field_degree), random_field(S.chart, rng, config.field_degree))
            for _ in range(config.field_pairs)
        ]
    phiY = [S.phi(Y) for _, Y in fields]
    for idx, pt in enumerate(sample_points(dim, config.samples, config.seed, config.mode)):
        G = g.at(pt)
        P = S.phi.at(pt)
        xi = S.xi.at(pt)
        eta = S.eta.at(pt)
        for (X, Y), pY in zip(fields, phiY):
            x, y = X.at(pt), Y.at(pt)
            gxy = inner_at(G, x, y)
            eta_y = sum((a * b for a, b in zip(eta, y)), start=0 * xi[0])
            eta_x = sum((a * b for a, b in zip(eta, x)), start=0 * xi[0])
            target = [gxy * a - eta_y * b for a, b in zip(xi, x)]
            # (nabla_X phi) Y = nabla_X (phi Y) - phi (nabla_X Y)
            lhs = _sub(
                covariant_derivative(g, x, pY, pt),
                [sum((P[i][k] * v for k, v in enumerate(covariant_derivative(g, x, Y, pt))), start=0 * xi[0]) for i in range(dim)],
            )
            rep.record("nabla_phi", _sub(lhs, target), idx)
            phix = [sum((P[i][k] * x[k] for k in range(dim)), start=0 * xi[0]) for i in range(dim)]
            rep.record("nabla_xi", [a + b for a, b in zip(covariant_derivative(g, x, S.xi, pt), phix)], idx)
            rep.record("curvature_xi", _sub(curvature_at(g, xi, x, y, pt), target), idx)
            s = ricci(g, x, pt)
            rep.record("ricci_xi", sum((a * b for a, b in zip(s, xi)), start=0 * xi[0]) - 2 * n * eta_x, idx)
    return rep.finalize()
