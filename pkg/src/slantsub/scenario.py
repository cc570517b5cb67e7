"""Scenario files: loading, validation, setup construction and running.

A scenario is a JSON object::

    {"source": {"type": "sasakian_R", "n": 2},
     "target": {"dim": 2, "metric": [["13/36", "-11/36"], ["-11/36", "5/18"]]},
     "map": ["x1 - 2*sqrt_d*x2 + y1", "2*x1 - 2*sqrt_d*x2 + y1"],
     "checks": ["riemannian", "theorem3"],
     "samples": 7, "seed": 42, "mode": "exact"}

A custom source replaces ``{"type": "sasakian_R", ...}`` by
``{"type": "custom", "vars": [...], "metric": [[...]], "phi": [[...]],
"xi": [...], "eta": [...]}`` with component expressions in ``vars``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .contact import ContactStructure, standard_sasakian
from .expr import ParseError
from .geometry import Chart, MetricField, OneForm, Tensor11, VectorField
from .sampling import CheckConfig

SCHEMA_VERSION = 1


class ScenarioError(ValueError):
    """Invalid scenario input; ``line``/``column`` locate it when known."""

    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


@dataclass
class Scenario:
    source: dict
    target: dict | None = None
    map: list | None = None
    checks: list = field(default_factory=list)
    samples: int = 7
    seed: int = 42
    mode: str = "exact"
    tol_first: float = 1e-9
    tol_second: float = 1e-6
    name: str = ""
    claims: dict | None = None

    def config(self) -> CheckConfig:
        return CheckConfig(
            samples=self.samples,
            seed=self.seed,
            mode=self.mode,
            tol_first=self.tol_first,
            tol_second=self.tol_second,
        )

    def to_dict(self) -> dict:
        out = {"name": self.name, "source": self.source}
        if self.target is not None:
            out["target"] = self.target
        if self.map is not None:
            out["map"] = self.map
        out.update(checks=self.checks, samples=self.samples, seed=self.seed, mode=self.mode)
        if self.tol_first != 1e-9 or self.tol_second != 1e-6:
            out.update(tol_first=self.tol_first, tol_second=self.tol_second)
        if self.claims:
            out["claims"] = self.claims
        return out


def _line_col(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _locate(text: str | None, needle: str):
    """Best-effort (line, column) of a JSON string value in the source text."""
    if not text:
        return None, None
    pos = text.find(json.dumps(needle))
    if pos < 0:
        return None, None
    return _line_col(text, pos + 1)


def loads(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return from_dict(data, text)


def load(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


_KNOWN_KEYS = {"name", "source", "target", "map", "checks", "samples", "seed", "mode", "tol_first", "tol_second", "claims"}


def from_dict(data: dict, text: str | None = None) -> Scenario:
    from .checks import CHECKS

    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    if "source" not in data:
        raise ScenarioError("scenario needs a 'source'")
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise ScenarioError("'checks' must be a list")
    for c in checks:
        if c not in CHECKS:
            line, col = _locate(text, c)
            raise ScenarioError(f"unknown check {c!r}", line, col)
    if ("map" in data) != ("target" in data):
        raise ScenarioError("'map' and 'target' must be given together")
    if "map" not in data:
        from .checks import STRUCTURE_CHECKS

        extra = [c for c in checks if c not in STRUCTURE_CHECKS]
        if extra:
            raise ScenarioError(f"checks {extra} need a 'map' and 'target'")
    mode = data.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ScenarioError(f"mode must be 'exact' or 'float', got {mode!r}")
    sc = Scenario(
        source=data["source"],
        target=data.get("target"),
        map=data.get("map"),
        checks=list(checks),
        samples=int(data.get("samples", 7)),
        seed=int(data.get("seed", 42)),
        mode=mode,
        tol_first=float(data.get("tol_first", 1e-9)),
        tol_second=float(data.get("tol_second", 1e-6)),
        name=str(data.get("name", "")),
        claims=data.get("claims"),
    )
    if sc.samples < 1:
        raise ScenarioError("'samples' must be positive")
    _validate_expressions(sc, text)
    return sc


def _parse(chart: Chart, expr, text):
    if isinstance(expr, bool) or not isinstance(expr, (str, int, float)):
        raise ScenarioError(f"expected an expression, got {expr!r}")
    if isinstance(expr, float):
        raise ScenarioError(f"float literal {expr!r} is not exact; write it as a rational string")
    try:
        return chart.poly(expr) if isinstance(expr, str) else chart.const(expr)
    except ParseError as exc:
        line, col = _locate(text, expr) if isinstance(expr, str) else (None, None)
        if line is not None:
            col += exc.position
        raise ScenarioError(f"cannot parse {expr!r}: {exc}", line, col) from exc


def _validate_expressions(sc: Scenario, text):
    source = build_source(sc.source, text)
    if sc.map is not None:
        _build_target(sc, text)
        for e in sc.map:
            _parse(source.chart, e, text)


def build_source(src: dict, text=None) -> ContactStructure:
    if not isinstance(src, dict) or "type" not in src:
        raise ScenarioError("'source' must be an object with a 'type'")
    kind = src["type"]
    if kind == "sasakian_R":
        n = src.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ScenarioError("sasakian_R needs an integer n >= 1")
        return standard_sasakian(n)
    if kind == "custom":
        try:
            chart = Chart(src["vars"])
            dim = chart.dim
            metric = [[_parse(chart, e, text) for e in row] for row in src["metric"]]
            phi = [[_parse(chart, e, text) for e in row] for row in src["phi"]]
            xi = [_parse(chart, e, text) for e in src["xi"]]
            eta = [_parse(chart, e, text) for e in src["eta"]]
            if len(metric) != dim or len(phi) != dim:
                raise ScenarioError(f"custom source tables must be {dim} x {dim}")
            return ContactStructure(chart, Tensor11(chart, phi), VectorField(chart, xi), OneForm(chart, eta), MetricField(chart, metric))
        except KeyError as exc:
            raise ScenarioError(f"custom source is missing {exc.args[0]!r}") from exc
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(f"invalid custom source: {exc}") from exc
    raise ScenarioError(f"unknown source type {kind!r}")


def _build_target(sc: Scenario, text):
    tgt = sc.target
    if not isinstance(tgt, dict) or "dim" not in tgt or "metric" not in tgt:
        raise ScenarioError("'target' needs 'dim' and 'metric'")
    dim = tgt["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ScenarioError("target 'dim' must be a positive integer")
    names = tgt.get("vars") or [f"u{i}" for i in range(1, dim + 1)]
    chart = Chart(names)
    rows = tgt["metric"]
    if not isinstance(rows, list) or len(rows) != dim or any(not isinstance(r, list) or len(r) != dim for r in rows):
        raise ScenarioError(f"target metric must be a {dim} x {dim} table")
    try:
        metric = MetricField(chart, [[_parse(chart, e, text) for e in row] for row in rows])
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"invalid target metric: {exc}") from exc
    if not isinstance(sc.map, list) or len(sc.map) != dim:
        raise ScenarioError(f"'map' must list {dim} components")
    return chart, metric


def build_setup(data, text=None):
    """SubmersionSetup from a scenario (dict or Scenario)."""
    from .submersion import SmoothMap, SubmersionSetup

    sc = data if isinstance(data, Scenario) else from_dict(data, text)
    if sc.map is None:
        raise ScenarioError("scenario has no map")
    source = build_source(sc.source, text)
    chart, metric = _build_target(sc, text)
    comps = [_parse(source.chart, e, text) for e in sc.map]
    return SubmersionSetup(source, chart, metric, SmoothMap(source.chart, chart, comps), name=sc.name)


@dataclass
class RunResult:
    scenario: Scenario
    reports: list

    @property
    def exit_code(self) -> int:
        return 1 if any(r.verdict == "fail" for r in self.reports) else 0

    def to_dict(self) -> dict:
        counts = {"pass": 0, "fail": 0, "inapplicable": 0}
        for r in self.reports:
            counts[r.verdict] += 1
        return {
            "schema": SCHEMA_VERSION,
            "scenario": self.scenario.to_dict(),
            "summary": {**counts, "exit_code": self.exit_code},
            "checks": [r.to_dict() for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def run(sc: Scenario) -> RunResult:
    """Execute the scenario's checks in declared order."""
    from .checks import run_checks

    config = sc.config()
    target = build_setup(sc) if sc.map is not None else build_source(sc.source)
    return RunResult(sc, run_checks(target, sc.checks, config, sc.claims))
