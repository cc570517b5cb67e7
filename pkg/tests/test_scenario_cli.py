import io
import json
from fractions import Fraction

import pytest

from slantsub import fixtures
from slantsub.checks import CHECKS, run_checks
from slantsub.cli import main
from slantsub.contact import standard_sasakian
from slantsub.expr import Point, format_poly
from slantsub.geometry import Chart, MetricField
from slantsub.scenario import ScenarioError, build_source, from_dict, loads, run
from slantsub.submersion import SmoothMap, SubmersionSetup


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data, indent=2))
    return str(p)


def test_fixture_list_has_eight_entries():
    code, out, _ = cli("fixtures", "list")
    assert code == 0
    lines = out.strip().splitlines()
    assert [line.split()[0] for line in lines] == ["SAS3", "SAS5", "SAS7", "HOPF5", "ANTI5", "INV7", "SLANT5", "XI-HORIZ"]


def test_emit_slant5_has_target_metric():
    code, out, _ = cli("fixtures", "emit", "SLANT5")
    assert code == 0
    assert json.loads(out)["target"]["metric"] == [["13/36", "-11/36"], ["-11/36", "5/18"]]


def test_emit_sas5_contact_form():
    # eta = 1/2 (dz - y1 dx1 - y2 dx2)
    _, out, _ = cli("fixtures", "emit", "SAS5")
    sc = json.loads(out)
    assert sc["source"] == {"type": "sasakian_R", "n": 2}
    eta = build_source(sc["source"]).eta.at(Point.exact(0, 0, 3, 5, 0))
    assert eta == [Fraction(-3, 2), Fraction(-5, 2), 0, 0, Fraction(1, 2)]


def test_emit_unknown_name():
    code, _, err = cli("fixtures", "emit", "NOPE")
    assert code == 2 and "unknown fixture" in err


def test_run_slant5(tmp_path):
    path = write(tmp_path, fixtures.scenario("SLANT5"))
    report = tmp_path / "r.json"
    code, out, _ = cli("run", path, "--report", str(report))
    assert code == 0
    data = json.loads(report.read_text())
    assert data["schema"] == 1
    by_name = {c["name"]: c for c in data["checks"]}
    assert by_name["slant_classify"]["evidence"]["classification"] == "proper_slant"
    assert by_name["slant_classify"]["evidence"]["cos2_min"] == "1/9"
    assert by_name["theorem3"]["verdict"] == "pass"
    assert [c["name"] for c in data["checks"]] == fixtures.scenario("SLANT5")["checks"]


def test_run_hopf5(tmp_path):
    code, _, _ = cli("run", write(tmp_path, fixtures.scenario("HOPF5")), "--report", str(tmp_path / "r.json"))
    data = json.loads((tmp_path / "r.json").read_text())
    by_name = {c["name"]: c for c in data["checks"]}
    assert code == 0
    assert by_name["slant_classify"]["evidence"]["classification"] == "invariant"
    assert by_name["fiber_geometry"]["evidence"]["totally_geodesic"] is True
    assert by_name["harmonic"]["verdict"] == "pass"


def test_report_is_deterministic(tmp_path):
    path = write(tmp_path, fixtures.scenario("ANTI5"))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli("run", path, "--report", str(a))
    cli("run", path, "--report", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_report_to_stdout(tmp_path):
    code, out, err = cli("run", write(tmp_path, fixtures.scenario("SAS3")), "--report", "-")
    assert code == 0
    assert json.loads(out)["summary"]["pass"] == 2
    assert "almost_contact" in err


def test_malformed_expression_exits_2_with_position(tmp_path):
    text = '{"source": {"type": "sasakian_R", "n": 2},\n "target": {"dim": 1, "metric": [["1"]]},\n "map": ["x1 + * y2"],\n "checks": ["riemannian"]}'
    code, _, err = cli("run", write(tmp_path, text))
    assert code == 2
    assert "line 3" in err and "column 16" in err


def test_invalid_json_exits_2(tmp_path):
    code, _, err = cli("run", write(tmp_path, '{"source": '))
    assert code == 2 and "line 1" in err


def test_missing_file_exits_2(tmp_path):
    code, _, _ = cli("run", str(tmp_path / "missing.json"))
    assert code == 2


def test_failing_check_exits_1(tmp_path):
    sc = fixtures.scenario("SLANT5")
    sc["target"]["metric"] = [[1, 0], [0, 1]]
    sc["checks"] = ["riemannian"]
    code, out, _ = cli("run", write(tmp_path, sc))
    assert code == 1 and "FAIL" in out


def test_flags_override_scenario(tmp_path):
    path = write(tmp_path, fixtures.scenario("SLANT5"))
    report = tmp_path / "r.json"
    code, _, _ = cli("run", path, "--mode", "float", "--samples", "3", "--seed", "5", "--tol-first", "1e-8", "--report", str(report))
    data = json.loads(report.read_text())
    assert code == 0
    assert data["scenario"]["mode"] == "float" and data["scenario"]["samples"] == 3 and data["scenario"]["seed"] == 5
    assert data["scenario"]["tol_first"] == 1e-8


def test_unknown_check_is_located():
    with pytest.raises(ScenarioError) as exc:
        loads('{"source": {"type": "sasakian_R", "n": 1},\n "checks": ["almost_contact", "theorem9"]}')
    assert exc.value.line == 2


def test_structure_only_scenario_rejects_map_checks():
    with pytest.raises(ScenarioError, match="need a 'map'"):
        from_dict({"source": {"type": "sasakian_R", "n": 1}, "checks": ["theorem3"]})


def test_float_literal_rejected():
    sc = fixtures.scenario("HOPF5")
    sc["target"]["metric"][0][0] = 0.25
    with pytest.raises(ScenarioError, match="not exact"):
        from_dict(sc)


def test_custom_source_matches_builtin():
    S = standard_sasakian(1)
    src = {
        "type": "custom",
        "vars": list(S.chart.var_names),
        "metric": [[format_poly(e) for e in row] for row in S.g.components],
        "phi": [[format_poly(e) for e in row] for row in S.phi.matrix],
        "xi": [format_poly(e) for e in S.xi.components],
        "eta": [format_poly(e) for e in S.eta.components],
    }
    sc = from_dict({"source": src, "checks": ["almost_contact", "sasakian"]})
    assert run(sc).exit_code == 0


def test_registry_covers_documented_names():
    names = {
        "theorem1", "theorem2_witness", "theorem3", "lemma3", "lemma4_mu", "corollary1", "lemma5",
        "lemma6_sec1", "theorem4", "prop1", "prop2", "prop3", "prop4", "prop5", "prop6", "eqW", "eqF",
        "connection_ids",
    }
    assert names <= set(CHECKS)


def test_geometry_errors_become_failed_reports():
    S = standard_sasakian(1)
    chart = Chart(["u"])
    setup = SubmersionSetup(S, chart, MetricField(chart, [[1]]), SmoothMap(S.chart, chart, ["x1^2"]))
    (rep,) = run_checks(setup, ["slant_classify"])
    assert rep.verdict == "fail" and "rank" in rep.reason


@pytest.mark.parametrize("name", fixtures.names())
def test_emit_run_round_trip(tmp_path, name):
    _, out, _ = cli("fixtures", "emit", name)
    path = write(tmp_path, out)
    code, _, _ = cli("run", path, "--report", str(tmp_path / "r.json"))
    direct = run(from_dict(fixtures.scenario(name)))
    data = json.loads((tmp_path / "r.json").read_text())
    assert [c["verdict"] for c in data["checks"]] == [r.verdict for r in direct.reports]
    assert code == direct.exit_code
    # XI-HORIZ cannot satisfy S2, every other fixture is clean
    assert code == (1 if name == "XI-HORIZ" else 0)
