"""The ten acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE [PASS|FAIL] <n>`` line (visible in
``pytest -v`` output) before asserting.
"""

import math

import numpy as np
import pytest

from slantsub import fixtures
from slantsub import slant as sl
from slantsub.contact import check_almost_contact, check_sasakian, standard_sasakian
from slantsub.expr import FieldElem
from slantsub.geometry import Chart, MetricField
from slantsub.oracles import compare_metric
from slantsub.sampling import CheckConfig, sample_points
from slantsub.scenario import build_setup
from slantsub.submersion import SmoothMap, SubmersionSetup, check_oneill_identities, fiber_geometry, is_harmonic

EXACT = CheckConfig(samples=7, seed=42, field_pairs=10)
R2 = FieldElem.sqrt_d()
SETUP_NAMES = ("HOPF5", "ANTI5", "INV7", "SLANT5", "XI-HORIZ")


@pytest.fixture(scope="module")
def setups():
    return {n: fixtures.build(n) for n in SETUP_NAMES}


@pytest.fixture(scope="module")
def slants(setups):
    return {n: sl.slant_classify(s, EXACT) for n, s in setups.items()}


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE [{'PASS' if ok else 'FAIL'}] {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def test_criterion_01_sasakian_suite(verdict):
    worst = {}
    for n in (1, 2, 3):
        S = standard_sasakian(n)
        for rep in (check_almost_contact(S, EXACT), check_sasakian(S, EXACT)):
            worst[(n, rep.name)] = rep.max_residual
            assert set(rep.parts) >= ({"phi_squared", "compatibility", "d_eta_Phi"} if rep.name == "almost_contact" else {"nabla_phi", "nabla_xi", "curvature_xi", "ricci_xi"})
    ok = all(v == 0 for v in worst.values())
    verdict(1, "Sasakian suite exact for n = 1, 2, 3", ok, f"max residual {max(worst.values())}")


def test_criterion_02_oneill_suite(verdict, setups):
    exact = {n: check_oneill_identities(setups[n], EXACT) for n in ("HOPF5", "INV7", "ANTI5", "SLANT5")}
    fl = {n: check_oneill_identities(setups[n], CheckConfig(mode="float", field_pairs=10)) for n in ("HOPF5", "INV7", "ANTI5", "SLANT5")}
    ok = all(r.passed and r.max_residual == 0 for r in exact.values()) and all(r.passed and r.max_residual <= 1e-9 for r in fl.values())
    parts = sorted(next(iter(exact.values())).parts)
    verdict(2, "O'Neill identities on HOPF5, INV7, ANTI5, SLANT5", ok, f"exact 0, float max {max(r.max_residual for r in fl.values()):.1e}; parts {', '.join(parts)}")


def test_criterion_03_slant5_reproduction(verdict, setups, slants):
    s = slants["SLANT5"]
    claims = sl.check_claims(setups["SLANT5"], fixtures.scenario("SLANT5")["claims"], EXACT, s)
    flags = claims.evidence["consistent"]
    derived = claims.evidence["horizontal_frame_derived"]
    ok = (
        s.classification == "proper_slant"
        and len(s.samples) >= 25
        and all(c == FieldElem(1, 0) / 9 for _, _, c, _ in s.samples)
        and s.spread == 0
        and flags["slant_angle"] is False
        and flags["horizontal_frame"] is False
        and claims.evidence["horizontal_frame_pairings"][0][0] == FieldElem(7, 0) / 2
        and derived == [[1, 0, 0, -2 * R2, 0], [0, 0, 1, 0, 0]]
        and claims.passed
    )
    verdict(
        3,
        "SLANT5 proper slant with cos^2 = 1/9, claimed pi/4 flagged, derived frame span{E1 - 2 sqrt2 E4, E3}",
        ok,
        f"{len(s.samples)} samples, spread {s.spread}, theta {s.theta:.6f}",
    )


def test_criterion_04_theorem3_biconditional(verdict, setups, slants):
    lams = {}
    ok = True
    for name, lam in (("INV7", 1), ("ANTI5", 0), ("SLANT5", FieldElem(1, 0) / 9)):
        rep = sl.check_theorem3(setups[name], EXACT, slants[name])
        lams[name] = rep.evidence["lam"]
        ok = ok and rep.passed and rep.max_residual == 0 and rep.evidence["lam"] == lam
    pert = build_setup(fixtures.perturbed_slant5_scenario())
    ps = sl.slant_classify(pert, EXACT)
    prep = sl.check_theorem3(pert, EXACT, ps)
    broke_both = ps.classification == "not_slant" and prep.evidence["identity_holds"] is False
    ok = ok and broke_both and prep.passed
    verdict(
        4,
        "psi^2 = -lambda (I - eta (x) xi) exact; perturbation breaks angle and identity together",
        ok,
        f"lambda {lams}, perturbed cos^2 spread {float(ps.spread):.3f}, identity residual {prep.evidence['observed']['psi_squared_identity']:.3f}",
    )


def test_criterion_05_theorem1(verdict, setups):
    rep = sl.check_theorem1(setups["XI-HORIZ"], EXACT)
    ok = rep.passed and rep.parts.get("psi_zero", 1) == 0 and rep.max_residual == 0
    verdict(5, "XI-HORIZ (xi horizontal) gives psi = 0", ok, f"chain residual {rep.max_residual}")


def test_criterion_06_theorem2_witness(verdict, setups):
    applicable = {}
    for name, s in setups.items():
        rep = sl.check_theorem2_witness(s, EXACT)
        if rep.verdict != "inapplicable":
            applicable[name] = rep
    ok = set(applicable) == {"ANTI5", "SLANT5"} and all(
        r.passed and r.max_residual == 0 and r.evidence["totally_umbilical"] is False for r in applicable.values()
    )
    verdict(6, "xi vertical with omega != 0: T_U xi = -omega U exact, fibers not umbilical", ok, f"applicable on {sorted(applicable)}")


def test_criterion_07_harmonic(verdict, setups):
    reps = {n: is_harmonic(s, EXACT, fiber_geometry(s, EXACT)) for n, s in setups.items()}
    harmonic_ok = all(
        reps[n].passed and max(float(x) for x in reps[n].evidence["tension_norms"]) <= 1e-8 and reps[n].evidence["minimal_fibers"]
        for n in ("HOPF5", "INV7")
    )
    agree = all(r.evidence["criteria_agree"] for r in reps.values())
    # a non-harmonic control where both criteria must say no
    chart, tgt = Chart(["x", "y"]), Chart(["u"])
    warped = SubmersionSetup(
        MetricField(chart, [[1, 0], [0, chart.poly("1 + x^2")]]), tgt, MetricField(tgt, [[1]]), SmoothMap(chart, tgt, ["x"])
    )
    control = is_harmonic(warped, EXACT)
    agree = agree and control.evidence["criteria_agree"] and not control.evidence["harmonic"]
    verdict(7, "HOPF5 and INV7 harmonic by tension and minimal fibers; criteria agree everywhere", harmonic_ok and agree, f"agreement on {sorted(reps)} plus a warped control")


def test_criterion_08_prop4(verdict, setups, slants):
    expected = {"ANTI5": True, "XI-HORIZ": True, "SLANT5": False, "INV7": False}
    got = {}
    ok = True
    for name, zero in expected.items():
        rep = sl.nabla_Q_suite(setups[name], EXACT, slants[name])
        got[name] = rep.evidence["nabla_Q_zero"]
        ok = ok and rep.passed and got[name] is zero and slants[name].is_anti_invariant() is zero
    verdict(8, "nabla Q = 0 iff anti-invariant across the catalog", ok, f"nabla Q = 0: {got}")


def test_criterion_09_lemma3_frames(verdict, setups, slants):
    s, slant = setups["SLANT5"], slants["SLANT5"]
    lem = sl.check_lemma3(s, EXACT, slant)
    S = s.structure
    worst = 0.0
    for pt in sample_points(5, 7):
        v2 = S.frame[1].at(pt)
        fr = sl.adapted_frames(s, pt, slant, first=v2)
        dec = sl.decompose(s, pt)
        psi = np.array(dec.psi, dtype=float)
        omega = np.array(dec.omega, dtype=float)
        e = np.array([float(c) for c in v2])
        G = np.array(s.splitting(pt).G, dtype=float)
        expected_v = [e, 3 * psi @ e, np.array([float(c) for c in S.xi.at(pt)])]
        expected_h = [3 / (2 * math.sqrt(2)) * omega @ e]
        for a, b in zip(fr.vertical, expected_v):
            worst = max(worst, float(np.abs(a - b).max()))
        gv = np.array([[a @ G @ b for b in expected_v] for a in expected_v])
        gh = np.array([[a @ G @ b for b in expected_h] for a in expected_h])
        worst = max(worst, float(np.abs(gv - np.eye(3)).max()), float(np.abs(gh - 1).max()))
    ok = lem.passed and lem.max_residual == 0 and set(lem.parts) == {"cos5a", "cos6"} and worst <= 1e-9
    verdict(9, "cos^2/sin^2 relations exact on SLANT5; {V2, 3 psi V2, xi} and {3/(2 sqrt2) omega V2} orthonormal", ok, f"frame error {worst:.1e}")


def test_criterion_10_cross_oracle(verdict, setups):
    worst = {}
    for name in fixtures.names():
        obj = fixtures.build(name)
        metrics = [obj.g] if name.startswith("SAS") else [obj.metric, obj.target_metric]
        cmps = [compare_metric(g, count=20) for g in metrics]
        assert all(c.probes == 20 for c in cmps)
        worst[name] = max(c.max_error for c in cmps)
    ok = all(v <= 1e-6 for v in worst.values())
    verdict(10, "exact Christoffel/curvature match finite differences on 20 probes per fixture", ok, f"max error {max(worst.values()):.1e}")
