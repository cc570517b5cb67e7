from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slantsub.contact import StructureError, check_almost_contact, check_sasakian, standard_sasakian
from slantsub.expr import FieldElem, Point
from slantsub.geometry import (
    Chart,
    MetricField,
    RankDeficiencyError,
    Tensor11,
    VectorField,
    covariant_derivative,
    curvature_at,
    inner_at,
    lie_bracket,
    orthonormalize,
    ricci,
)
from slantsub.oracles import compare_metric
from slantsub.sampling import CheckConfig, sample_points

S5 = standard_sasakian(2)
E = S5.frame  # E1, E2 (2 d/dy), E3, E4 (2(d/dx + y d/dz)), xi

coords = st.fractions(min_value=-2, max_value=2, max_denominator=8)
points5 = st.tuples(*[coords] * 5).map(lambda c: Point(c, "exact"))


def test_frame_is_orthonormal_everywhere():
    for pt in sample_points(5, 4):
        G = S5.g.at(pt)
        vs = [X.at(pt) for X in E]
        for i, u in enumerate(vs):
            for j, v in enumerate(vs):
                assert inner_at(G, u, v) == (1 if i == j else 0)


def test_phi_on_frame():
    pt = Point.exact(1, 2, 3, 4, 5)
    phi = S5.phi
    assert phi(E[0]).at(pt) == E[2].at(pt)
    assert phi(E[2]).at(pt) == [-c for c in E[0].at(pt)]
    assert all(c == 0 for c in phi(S5.xi).at(pt))


def test_bracket_E1_E3_is_twice_xi():
    br = lie_bracket(E[0], E[2])
    assert br.at(Point.exact(0, 1, 2, 3, 4)) == [2 * c for c in S5.xi.at(Point.exact(0, 1, 2, 3, 4))]


@settings(max_examples=15, deadline=None)
@given(points5)
def test_nabla_xi_is_minus_phi(pt):
    for X in E:
        lhs = covariant_derivative(S5.g, X, S5.xi, pt)
        rhs = [-c for c in S5.phi(X).at(pt)]
        assert lhs == rhs


@settings(max_examples=10, deadline=None)
@given(points5)
def test_ricci_in_xi_direction(pt):
    # S(X, xi) = 2n eta(X) with n = 2
    xi = S5.xi.at(pt)
    for X in E:
        x = X.at(pt)
        s = ricci(S5.g, x, pt)
        assert sum((a * b for a, b in zip(s, xi)), start=FieldElem(0)) == 4 * S5.eta.pair_at(pt, x)


def test_curvature_with_xi():
    # R(X, Y) xi = eta(Y) X - eta(X) Y on a Sasakian manifold
    pt = Point.exact(Fraction(1, 3), -1, 2, Fraction(1, 2), 0)
    x, y = E[0].at(pt), E[4].at(pt)
    r = curvature_at(S5.g, x, y, S5.xi.at(pt), pt)
    assert r == x


@pytest.mark.parametrize("n", [1, 2])
def test_standard_structure_suites(n):
    S = standard_sasakian(n)
    cfg = CheckConfig(field_pairs=4, samples=4)
    assert check_almost_contact(S, cfg).passed
    assert check_sasakian(S, cfg).passed


def test_float_mode_structure_suite():
    cfg = CheckConfig(mode="float", field_pairs=3, samples=3)
    rep = check_sasakian(standard_sasakian(1), cfg)
    assert rep.passed and rep.max_residual <= 1e-6


def test_broken_phi_is_detected():
    S = standard_sasakian(1)
    broken = S.with_phi(S.phi + S.phi)
    rep = check_almost_contact(broken, CheckConfig(field_pairs=2, samples=2))
    assert not rep.passed
    assert rep.parts["phi_squared"] > 0


def test_even_dimension_is_rejected():
    chart = Chart(["a", "b"])
    one, zero = chart.const(1), chart.zero
    with pytest.raises(StructureError):
        from slantsub.contact import ContactStructure
        from slantsub.geometry import OneForm

        S = ContactStructure(
            chart,
            Tensor11(chart, [[zero, zero], [zero, zero]]),
            VectorField(chart, [one, zero]),
            OneForm(chart, [one, zero]),
            MetricField(chart, [[one, zero], [zero, one]]),
        )
        S.require_odd()


def test_orthonormalize_reports_rank():
    G = [[FieldElem(1), FieldElem(0)], [FieldElem(0), FieldElem(1)]]
    with pytest.raises(RankDeficiencyError) as exc:
        orthonormalize([[1, 0], [2, 0]], G)
    assert exc.value.rank == 1


def test_asymmetric_metric_rejected():
    chart = Chart(["a", "b"])
    with pytest.raises(ValueError):
        MetricField(chart, [[1, chart.coord("a")], [0, 1]])


def test_finite_difference_oracle_agrees():
    cmp = compare_metric(S5.g, count=5)
    assert cmp.max_error < 1e-6
