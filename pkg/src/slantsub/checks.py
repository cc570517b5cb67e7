"""Registry of named checks and the context that shares work between them.

Several checks reuse the same slant classification or fiber geometry, and
some computations (the omega-parallel branch, the foliation propositions,
the mu analysis) produce more than one report.  A ``CheckContext`` computes
each of these at most once per run.
"""

from __future__ import annotations

from .contact import ContactStructure, StructureError, check_almost_contact, check_sasakian
from .expr.errors import EvaluationError
from .geometry import RankDeficiencyError, SingularMetricError
from .report import CheckReport
from .sampling import CheckConfig
from .submersion import (
    SplittingError,
    SubmersionSetup,
    check_oneill_identities,
    check_riemannian,
    fiber_geometry,
    is_harmonic,
)
from . import slant

STRUCTURE_CHECKS = ("almost_contact", "sasakian")


class CheckContext:
    """One setup (or bare contact structure) plus lazily shared results."""

    def __init__(self, target, config: CheckConfig | None = None, claims: dict | None = None):
        self.config = config or CheckConfig()
        self.claims = claims or {}
        if isinstance(target, SubmersionSetup):
            self.setup = target
            self.structure = target.structure
        elif isinstance(target, ContactStructure):
            self.setup = None
            self.structure = target
        else:
            raise TypeError(f"cannot check a {type(target).__name__}")
        self._cache = {}

    def _once(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def require_setup(self) -> SubmersionSetup:
        if self.setup is None:
            raise ValueError("this check needs a map; the scenario only defines a structure")
        return self.setup

    @property
    def slant(self):
        return self._once("slant", lambda: slant.slant_classify(self.require_setup(), self.config))

    @property
    def fibers(self):
        return self._once("fibers", lambda: fiber_geometry(self.require_setup(), self.config))

    def omega_suite(self):
        return self._once("omega", lambda: slant.omega_parallel_suite(self.setup, self.config, self.slant, self.fibers))

    def mu(self):
        return self._once("mu", lambda: slant.mu_analysis(self.setup, self.config, self.slant))

    def foliation(self):
        return self._once("foliation", lambda: slant.foliation_suite(self.setup, self.config, self.slant, self.fibers))


def _claims(ctx: CheckContext) -> CheckReport:
    if not ctx.claims:
        return CheckReport("claims", "stated values audited against derived values").inapplicable("scenario has no claims")
    return slant.check_claims(ctx.setup, ctx.claims, ctx.config, ctx.slant)


CHECKS = {
    "almost_contact": lambda c: check_almost_contact(c.structure, c.config),
    "sasakian": lambda c: check_sasakian(c.structure, c.config),
    "riemannian": lambda c: check_riemannian(c.setup, c.config),
    "oneill": lambda c: check_oneill_identities(c.setup, c.config),
    "fiber_geometry": lambda c: c.fibers.to_report(),
    "harmonic": lambda c: is_harmonic(c.setup, c.config, c.fibers),
    "slant_classify": lambda c: c.slant.to_report(),
    "claims": _claims,
    "theorem1": lambda c: slant.check_theorem1(c.setup, c.config),
    "theorem2_witness": lambda c: slant.check_theorem2_witness(c.setup, c.config, c.fibers),
    "theorem3": lambda c: slant.check_theorem3(c.setup, c.config, c.slant),
    "lemma3": lambda c: slant.check_lemma3(c.setup, c.config, c.slant),
    "lemma4_mu": lambda c: c.mu()[0],
    "corollary1": lambda c: slant.check_corollary1(c.setup, c.config, c.slant),
    "lemma5": lambda c: slant.check_lemma5(c.setup, c.config, c.slant),
    "lemma6_sec1": lambda c: c.omega_suite()[1],
    "theorem4": lambda c: c.omega_suite()[2],
    "prop1": lambda c: c.foliation()["prop1"],
    "prop2": lambda c: c.foliation()["prop2"],
    "prop3": lambda c: c.mu()[1],
    "prop4": lambda c: slant.nabla_Q_suite(c.setup, c.config, c.slant),
    "prop5": lambda c: c.foliation()["prop5"],
    "prop6": lambda c: c.foliation()["prop6"],
    "eqW": lambda c: c.omega_suite()[0],
    "eqF": lambda c: slant.check_eqF(c.setup, c.config),
    "connection_ids": lambda c: slant.check_connection_ids(c.setup, c.config),
}

# Errors that describe the geometry at a sample point rather than bad input:
# they become failed reports instead of aborting the run.
_GEOMETRY_ERRORS = (RankDeficiencyError, SingularMetricError, SplittingError, StructureError, EvaluationError, ZeroDivisionError)


def run_check(name: str, ctx: CheckContext) -> CheckReport:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    if ctx.setup is None and name not in STRUCTURE_CHECKS:
        raise ValueError(f"check {name!r} needs a map; the scenario only defines a structure")
    try:
        return CHECKS[name](ctx).finalize()
    except _GEOMETRY_ERRORS as exc:
        rep = CheckReport(name, "", reason=f"{type(exc).__name__}: {exc}")
        rep.require("evaluable", False)
        return rep.finalize()


def run_checks(target, names, config: CheckConfig | None = None, claims: dict | None = None) -> list:
    """Run ``names`` in order against a setup or structure."""
    ctx = CheckContext(target, config, claims)
    return [run_check(n, ctx) for n in names]
