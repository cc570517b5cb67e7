import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slantsub import fixtures
from slantsub import slant as sl
from slantsub.expr import FieldElem, Point
from slantsub.geometry import covariant_derivative, inner_at
from slantsub.sampling import CheckConfig, sample_points
from slantsub.scenario import build_setup

R2 = FieldElem.sqrt_d()
ORIGIN5 = Point.exact(0, 0, 0, 0, 0)
CFG = CheckConfig(samples=4, field_pairs=4)


@pytest.fixture(scope="module")
def setups():
    return {n: fixtures.build(n) for n in ("HOPF5", "ANTI5", "INV7", "SLANT5", "XI-HORIZ")}


@pytest.fixture(scope="module")
def slants(setups):
    return {n: sl.slant_classify(s, CFG) for n, s in setups.items()}


def combo(S, coeffs, pt):
    vs = [E.at(pt) for E in S.frame]
    return [sum((FieldElem.coerce(c) * v[i] for c, v in zip(coeffs, vs)), start=FieldElem(0)) for i in range(len(vs))]


def V1(S, pt):
    return combo(S, [2, 0, 0, R2 / 2, 0], pt)


def test_decompose_slant5_at_origin(setups):
    s = setups["SLANT5"]
    S = s.structure
    dec = sl.decompose(s, ORIGIN5)
    v1 = V1(S, ORIGIN5)
    assert dec.apply("psi", v1) == combo(S, [0, -R2 / 2, 0, 0, 0], ORIGIN5)
    assert dec.apply("omega", v1) == combo(S, [0, 0, 2, 0, 0], ORIGIN5)


def test_decompose_anti5(setups):
    s = setups["ANTI5"]
    S = s.structure
    for pt in sample_points(5, 3):
        dec = sl.decompose(s, pt)
        for v in s.splitting(pt).vertical:
            assert all(c == 0 for c in dec.apply("psi", v))
        assert dec.apply("omega", S.frame[0].at(pt)) == S.frame[2].at(pt)


@pytest.mark.parametrize("name", ["HOPF5", "ANTI5", "INV7", "SLANT5"])
def test_xi_is_killed(setups, name):
    s = setups[name]
    pt = sample_points(s.m, 2)[1]
    dec = sl.decompose(s, pt)
    xi = s.structure.xi.at(pt)
    assert all(c == 0 for c in dec.apply("psi", xi)) and all(c == 0 for c in dec.apply("omega", xi))


def test_classification_table(slants):
    assert slants["SLANT5"].classification == "proper_slant"
    assert slants["SLANT5"].lam == FieldElem(1, 0) / 9
    assert slants["SLANT5"].spread == 0
    assert len(slants["SLANT5"].samples) >= 25
    assert slants["ANTI5"].classification == "anti_invariant"
    assert slants["INV7"].classification == "invariant"
    assert slants["XI-HORIZ"].is_anti_invariant()
    hopf = slants["HOPF5"]
    assert hopf.vacuous and hopf.is_invariant() and hopf.is_anti_invariant()


def test_slant5_angle_by_independent_grid():
    """36 directions in D at the origin, computed with plain numpy."""
    s = fixtures.build("SLANT5")
    S = s.structure
    G = np.array(S.g.at(ORIGIN5), dtype=float)
    P = np.array(S.phi.at(ORIGIN5), dtype=float)
    J = np.array(s.map.jacobian_at(ORIGIN5), dtype=float)
    _, sv, vt = np.linalg.svd(J)
    K = vt[2:].T  # kernel basis (columns)
    Pv = K @ np.linalg.solve(K.T @ G @ K, K.T @ G)
    v1 = np.array([float(c) for c in V1(S, ORIGIN5)])
    v2 = np.array([float(c) for c in S.frame[1].at(ORIGIN5)])
    v1 /= math.sqrt(v1 @ G @ v1)
    for t in np.linspace(0, math.pi, 36, endpoint=False):
        u = math.cos(t) * v1 + math.sin(t) * v2
        pu, psu = P @ u, Pv @ P @ u
        assert (psu @ G @ psu) / (pu @ G @ pu) == pytest.approx(1 / 9, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.fractions(min_value=1, max_value=50, max_denominator=3),
)
def test_angle_is_scale_invariant(a, b, c):
    if not (a or b):
        return
    s = fixtures.build("SLANT5")
    S = s.structure
    pt = sample_points(5, 3)[2]
    sp = s.splitting(pt)
    dec = sl.decompose(s, pt)
    u = [FieldElem(a) * x + FieldElem(b) * y for x, y in zip(V1(S, pt), S.frame[1].at(pt))]

    def cos2(v):
        pv, fv = dec.apply("psi", v), dec.apply("phi", v)
        return inner_at(sp.G, pv, pv) / inner_at(sp.G, fv, fv)

    assert cos2(u) == cos2([FieldElem(c) * x for x in u]) == FieldElem(1, 0) / 9


def test_theorem1(setups):
    assert sl.check_theorem1(setups["XI-HORIZ"], CFG).passed
    assert sl.check_theorem1(setups["SLANT5"], CFG).verdict == "inapplicable"


def test_theorem2_witness(setups):
    for name in ("ANTI5", "SLANT5"):
        rep = sl.check_theorem2_witness(setups[name], CFG)
        assert rep.passed and rep.max_residual == 0
        assert rep.evidence["totally_umbilical"] is False
    assert sl.check_theorem2_witness(setups["HOPF5"], CFG).verdict == "inapplicable"


@pytest.mark.parametrize("name,lam", [("INV7", 1), ("ANTI5", 0), ("SLANT5", FieldElem(1, 0) / 9)])
def test_theorem3_lambdas(setups, slants, name, lam):
    rep = sl.check_theorem3(setups[name], CFG, slants[name])
    assert rep.passed and rep.max_residual == 0
    assert rep.evidence["lam"] == lam


def test_theorem3_detects_perturbation():
    s = build_setup(fixtures.perturbed_slant5_scenario())
    slant = sl.slant_classify(s, CFG)
    assert slant.classification == "not_slant"
    assert slant.spread != 0
    rep = sl.check_theorem3(s, CFG, slant)
    assert rep.passed  # the two detectors agree
    assert rep.evidence["identity_holds"] is False
    assert rep.evidence["observed"]["psi_squared_identity"] > 0.1


def test_lemma3_values(setups, slants):
    s = setups["SLANT5"]
    S = s.structure
    pt = ORIGIN5
    dec = sl.decompose(s, pt)
    G = s.splitting(pt).G
    v2 = S.frame[1].at(pt)
    p = dec.apply("psi", v2)
    assert p == [R2 / 9 * c for c in V1(S, pt)]
    assert inner_at(G, p, p) == FieldElem(1, 0) / 9
    w = dec.apply("omega", v2)
    assert inner_at(G, w, w) == FieldElem(8, 0) / 9
    assert sl.check_lemma3(s, CFG, slants["SLANT5"]).max_residual == 0
    a = setups["ANTI5"]
    we = sl.decompose(a, pt).apply("omega", a.structure.frame[0].at(pt))
    assert inner_at(a.splitting(pt).G, we, we) == 1


def test_mu_analysis(setups, slants):
    lem, prop = sl.mu_analysis(setups["SLANT5"], CFG, slants["SLANT5"])
    assert lem.passed and prop.passed
    assert set(prop.evidence["dim_mu"]) == {0}
    lem, prop = sl.mu_analysis(setups["HOPF5"], CFG, slants["HOPF5"])
    assert lem.passed and set(lem.evidence["dim_mu"]) == {4}
    lem, prop = sl.mu_analysis(setups["ANTI5"], CFG, slants["ANTI5"])
    assert lem.passed and prop.verdict == "inapplicable"
    assert set(prop.evidence["dim_mu"]) == {2}


def test_adapted_frames_from_V2(setups, slants):
    s = setups["SLANT5"]
    S = s.structure
    v2 = S.frame[1].at(ORIGIN5)
    fr = sl.adapted_frames(s, ORIGIN5, slants["SLANT5"], first=v2)
    assert fr.k == 1 and fr.kernel_dim == 3
    assert fr.gram_vertical_error < 1e-9 and fr.gram_horizontal_error < 1e-9
    np.testing.assert_allclose(fr.vertical[0], [float(c) for c in v2])
    psi = np.array(sl.decompose(s, ORIGIN5).psi, dtype=float)
    np.testing.assert_allclose(fr.vertical[1], 3 * psi @ fr.vertical[0], atol=1e-12)
    with pytest.raises(ValueError):
        sl.adapted_frames(setups["ANTI5"], ORIGIN5, slants["ANTI5"])


def test_omega_parallel_branches(setups, slants):
    eqw, sec1, thm4 = sl.omega_parallel_suite(setups["HOPF5"], CFG, slants["HOPF5"])
    assert eqw.passed and sec1.passed and thm4.passed
    eqw, sec1, thm4 = sl.omega_parallel_suite(setups["SLANT5"], CFG, slants["SLANT5"])
    assert eqw.passed
    assert sec1.verdict == thm4.verdict == "inapplicable"
    assert "hypothesis unmet" in thm4.reason


def test_eqF_psi_reading_holds(setups):
    rep = sl.check_eqF(setups["SLANT5"], CFG)
    assert rep.passed and rep.max_residual == 0
    assert rep.evidence["observed"]["phi_reading"] > 0


def test_nabla_Q(setups, slants):
    for name, zero in (("ANTI5", True), ("SLANT5", False), ("INV7", False), ("XI-HORIZ", True)):
        rep = sl.nabla_Q_suite(setups[name], CFG, slants[name])
        assert rep.passed
        assert rep.evidence["nabla_Q_zero"] is zero


def test_nabla_Q_at_V2_xi(setups):
    s = setups["SLANT5"]
    S = s.structure
    Q = sl._ops(s).Q
    pt = ORIGIN5
    sp = s.splitting(pt)
    dec = sl.decompose(s, pt)
    u = S.frame[1].at(pt)
    Qm = [[sum((a * b for a, b in zip(row, col)), start=FieldElem(0)) for col in zip(*dec.psi)] for row in dec.psi]
    lhs = [
        a - b
        for a, b in zip(
            sp.vertical_part(covariant_derivative(s.metric, u, Q(S.xi), pt)),
            [sum((m * x for m, x in zip(row, sp.vertical_part(covariant_derivative(s.metric, u, S.xi, pt)))), start=FieldElem(0)) for row in Qm],
        )
    ]
    assert lhs == [-c / 9 for c in dec.apply("psi", u)]
    assert any(lhs)


def test_foliation_suite(setups, slants):
    f = sl.foliation_suite(setups["ANTI5"], CFG, slants["ANTI5"])
    assert f["prop1"].passed and f["prop2"].passed
    f = sl.foliation_suite(setups["SLANT5"], CFG, slants["SLANT5"])
    assert all(r.passed for r in f.values() if r.verdict != "inapplicable")
    assert f["prop6"].evidence["totally_geodesic_fibers"] is False
    assert f["prop6"].evidence["omega_max"] > 0
    assert f["prop2"].evidence["integrable"] is False
    f = sl.foliation_suite(setups["HOPF5"], CFG, slants["HOPF5"])
    assert f["prop5"].passed
    assert f["prop5"].evidence["totally_geodesic"] is False


@pytest.mark.parametrize("name", ["HOPF5", "ANTI5", "INV7", "SLANT5", "XI-HORIZ"])
def test_connection_identities(setups, name):
    rep = sl.check_connection_ids(setups[name], CFG)
    assert rep.passed and rep.max_residual == 0


def test_claims_audit(setups, slants):
    s = setups["SLANT5"]
    rep = sl.check_claims(s, fixtures.scenario("SLANT5")["claims"], CFG, slants["SLANT5"])
    assert rep.passed
    flags = rep.evidence["consistent"]
    assert flags == {"slant_angle": False, "kernel_frame": True, "horizontal_frame": False}
    assert rep.evidence["horizontal_frame_pairings"][0][0] == FieldElem(7, 0) / 2
    derived = rep.evidence["horizontal_frame_derived"]
    assert derived == [[1, 0, 0, -2 * R2, 0], [0, 0, 1, 0, 0]]


@pytest.mark.parametrize("text,value", [("pi/4", math.pi / 4), ("2*pi/3", 2 * math.pi / 3), ("pi", math.pi), ("1/2", 0.5)])
def test_parse_angle(text, value):
    assert sl.parse_angle(text) == pytest.approx(value)


def test_float_mode_classification():
    s = fixtures.build("SLANT5")
    rep = sl.slant_classify(s, CheckConfig(mode="float", samples=3))
    assert rep.classification == "proper_slant"
    assert rep.lam == pytest.approx(1 / 9)
