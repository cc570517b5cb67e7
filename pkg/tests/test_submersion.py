import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slantsub import fixtures
from slantsub.contact import standard_sasakian
from slantsub.expr import FieldElem, Point
from slantsub.geometry import Chart, MetricField, covariant_derivative, inner_at
from slantsub.sampling import CheckConfig, sample_points
from slantsub.submersion import (
    S1ViolationError,
    SmoothMap,
    SubmersionSetup,
    check_oneill_identities,
    check_riemannian,
    fiber_geometry,
    is_harmonic,
    oneill_A,
    oneill_T,
    second_fundamental_form,
    splitting_at,
    tension,
)

R2 = FieldElem.sqrt_d()
ORIGIN5 = Point.exact(0, 0, 0, 0, 0)
CFG = CheckConfig(samples=4, field_pairs=4)


@pytest.fixture(scope="module")
def slant5():
    return fixtures.build("SLANT5")


@pytest.fixture(scope="module")
def hopf5():
    return fixtures.build("HOPF5")


@pytest.fixture(scope="module")
def anti5():
    return fixtures.build("ANTI5")


@pytest.fixture(scope="module")
def inv7():
    return fixtures.build("INV7")


def frame_vec(S, coeffs, pt):
    vs = [E.at(pt) for E in S.frame]
    return [sum((c * v[i] for c, v in zip(coeffs, vs)), start=FieldElem(0)) for i in range(len(vs))]


def test_slant5_kernel_membership(slant5):
    S = slant5.structure
    pt = Point.exact(1, -2, 3, 1, 0)
    sp = splitting_at(slant5, pt)
    V1 = frame_vec(S, [2, 0, 0, R2 / 2, 0], pt)
    for v in (V1, S.frame[1].at(pt), S.xi.at(pt)):
        assert sp.is_vertical(v)
    assert len(sp.vertical) == 3


def test_slant5_horizontal_span(slant5):
    S = slant5.structure
    sp = splitting_at(slant5, ORIGIN5)
    H1 = frame_vec(S, [1, 0, 0, -2 * R2, 0], ORIGIN5)
    H2 = S.frame[2].at(ORIGIN5)
    assert sp.is_horizontal(H1) and sp.is_horizontal(H2)
    claimed = frame_vec(S, [2, 0, 0, -R2 / 2, 0], ORIGIN5)
    V1 = frame_vec(S, [2, 0, 0, R2 / 2, 0], ORIGIN5)
    assert inner_at(sp.G, claimed, V1) == FieldElem(7, 0) / 2


def test_duplicate_rows_violate_s1():
    S = standard_sasakian(2)
    chart = Chart(["u1", "u2"])
    g = MetricField(chart, [[1, 0], [0, 1]])
    setup = SubmersionSetup(S, chart, g, SmoothMap(S.chart, chart, ["x1 + y2", "x1 + y2"]))
    with pytest.raises(S1ViolationError) as exc:
        splitting_at(setup, ORIGIN5)
    assert exc.value.rank == 1
    assert not check_riemannian(setup, CFG).passed


def test_printed_example_fails_s2_with_euclidean_target():
    sc = fixtures.scenario("SLANT5")
    sc["target"]["metric"] = [[1, 0], [0, 1]]
    from slantsub.scenario import build_setup

    setup = build_setup(sc)
    E3 = setup.structure.frame[2].at(ORIGIN5)
    pushed = setup.map.push(ORIGIN5, E3)
    assert pushed == [2, 4]
    assert inner_at([[1, 0], [0, 1]], pushed, pushed) == 20
    assert not check_riemannian(setup, CFG).passed


@pytest.mark.parametrize("name", ["HOPF5", "ANTI5", "INV7", "SLANT5"])
def test_fixtures_are_riemannian(name):
    assert check_riemannian(fixtures.build(name), CFG).passed


def test_projector_algebra(slant5, inv7):
    for setup in (slant5, inv7):
        for pt in sample_points(setup.m, 3):
            sp = setup.splitting(pt)
            n = setup.m
            for i in range(n):
                e = [FieldElem(1 if k == i else 0) for k in range(n)]
                v = sp.vertical_part(e)
                assert sp.vertical_part(v) == v
                assert [a + b for a, b in zip(v, sp.horizontal_part(e))] == e
                for j in range(n):
                    f = [FieldElem(1 if k == j else 0) for k in range(n)]
                    assert inner_at(sp.G, v, sp.horizontal_part(f)) == 0
            J = setup.map.jacobian_at(pt)
            for v in sp.vertical:
                assert all(sum((a * b for a, b in zip(row, v)), start=FieldElem(0)) == 0 for row in J)


def test_hopf_A_of_E1_E3_is_xi(hopf5):
    S = hopf5.structure
    pt = Point.exact(1, 2, -1, 3, 5)
    assert oneill_A(hopf5, S.frame[0], S.frame[2], pt) == S.xi.at(pt)


def test_inv7_A_of_E2_E5_is_xi(inv7):
    S = inv7.structure
    pt = sample_points(7, 3)[2]
    assert oneill_A(inv7, S.frame[1], S.frame[4], pt) == S.xi.at(pt)


def test_anti5_T_E1_xi(anti5):
    S = anti5.structure
    for pt in sample_points(5, 3):
        assert oneill_T(anti5, S.frame[0], S.xi, pt) == [-c for c in S.frame[2].at(pt)]


@pytest.mark.parametrize("name", ["HOPF5", "ANTI5", "INV7", "SLANT5"])
def test_T_xi_xi_vanishes(name):
    setup = fixtures.build(name)
    S = setup.structure
    for pt in sample_points(setup.m, 3):
        assert all(c == 0 for c in oneill_T(setup, S.xi, S.xi, pt))


def test_pointwise_tensors_match_field_route(slant5):
    S = slant5.structure
    pt = sample_points(5, 3)[2]
    tens = slant5.tensors(pt)
    for E in S.frame:
        for F in S.frame:
            assert tens.T(E.at(pt), F.at(pt)) == oneill_T(slant5, E, F, pt)
            assert tens.A(E.at(pt), F.at(pt)) == oneill_A(slant5, E, F, pt)


@pytest.mark.parametrize("name", ["HOPF5", "ANTI5", "INV7", "SLANT5"])
def test_oneill_suite_exact(name):
    rep = check_oneill_identities(fixtures.build(name), CFG)
    assert rep.passed and rep.max_residual == 0


def test_oneill_suite_float(slant5):
    rep = check_oneill_identities(slant5, CheckConfig(mode="float", samples=3, field_pairs=4))
    assert rep.passed and rep.max_residual <= 1e-9


def test_fiber_geometry_table(hopf5, anti5, inv7, slant5):
    h = fiber_geometry(hopf5, CFG)
    assert h.totally_geodesic and h.minimal
    a = fiber_geometry(anti5, CFG)
    assert not a.totally_geodesic and not a.totally_umbilical and a.minimal
    assert fiber_geometry(inv7, CFG).totally_geodesic
    s = fiber_geometry(slant5, CFG)
    assert not s.totally_geodesic and not s.totally_umbilical


def test_sff_vanishes_on_horizontal_pairs(slant5):
    for pt in sample_points(5, 3):
        sp = slant5.splitting(pt)
        for x in sp.horizontal:
            for y in sp.horizontal:
                assert all(c == 0 for c in second_fundamental_form(slant5, x, y, pt))


def test_basic_fields_push_to_target_connection(slant5):
    # H1 = E1 - 2 sqrt2 E4 and H2 = E3 push to constant fields on a flat target
    S = slant5.structure
    from slantsub.geometry import VectorField

    comps = [S.frame[0].components[i] - S.frame[3].components[i] * (2 * R2) for i in range(5)]
    H1 = VectorField(S.chart, comps)
    H2 = S.frame[2]
    for pt in sample_points(5, 3):
        sp = slant5.splitting(pt)
        for X in (H1, H2):
            for Y in (H1, H2):
                hn = sp.horizontal_part(covariant_derivative(slant5.metric, X, Y, pt))
                assert all(c == 0 for c in slant5.map.push(pt, hn))


def test_anti5_tension_is_minus_pushed_T(anti5):
    S = anti5.structure
    for pt in sample_points(5, 3):
        tau = tension(anti5, pt, exact_trace=True)
        TE1 = oneill_T(anti5, S.frame[0], S.frame[0], pt)
        assert tau == [-c for c in anti5.map.push(pt, TE1)]


def warped_setup():
    """dx^2 + (1 + x^2) dy^2 -> R, (x, y) -> x: fibers are not minimal off x = 0."""
    chart = Chart(["x", "y"])
    g = MetricField(chart, [[1, 0], [0, chart.poly("1 + x^2")]])
    tgt = Chart(["u"])
    return SubmersionSetup(g, tgt, MetricField(tgt, [[1]]), SmoothMap(chart, tgt, ["x"]))


def test_harmonic_criteria_agree_in_both_directions(hopf5):
    assert is_harmonic(hopf5, CFG).passed
    w = warped_setup()
    assert check_riemannian(w, CFG).passed
    rep = is_harmonic(w, CFG)
    assert not rep.passed
    assert rep.evidence["criteria_agree"] and not rep.evidence["minimal_fibers"]


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=6).filter(bool))
def test_T_is_tensorial_in_first_slot(c):
    setup = fixtures.build("ANTI5")
    S = setup.structure
    pt = sample_points(5, 3)[2]
    t1 = oneill_T(setup, S.frame[0], S.xi, pt)
    tc = oneill_T(setup, [FieldElem(c) * v for v in S.frame[0].at(pt)], S.xi, pt)
    assert tc == [FieldElem(c) * v for v in t1]
