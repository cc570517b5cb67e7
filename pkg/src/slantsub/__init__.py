"""Exact verification of slant Riemannian submersions from Sasakian manifolds.

Layers, bottom up:

- ``expr``: the field Q[sqrt(d)], polynomials, rational functions, parsing
  and exact linear algebra.
- ``geometry``: charts, fields, metrics, Levi-Civita connection, curvature.
- ``contact``: almost contact metric and Sasakian structures.
- ``submersion``: the vertical/horizontal splitting, O'Neill tensors, fiber
  geometry and harmonicity.
- ``slant``: psi/omega decomposition, slant angle and the theorem suite.
- ``scenario``, ``fixtures``, ``checks``, ``cli``: scenario files, the
  built-in catalog and the check runner.
"""

from .checks import CHECKS, run_checks
from .contact import ContactStructure, check_almost_contact, check_sasakian, standard_sasakian
from .expr import FieldElem, Point, Poly, RatFun, parse_poly
from .geometry import Chart, MetricField, OneForm, Tensor11, VectorField
from .report import CheckReport
from .sampling import CheckConfig
from .scenario import Scenario, ScenarioError, build_setup, run
from .slant import SlantReport, decompose, slant_classify
from .submersion import SmoothMap, SubmersionSetup, oneill_A, oneill_T, splitting_at

__version__ = "0.1.0"

__all__ = [
    "CHECKS",
    "Chart",
    "CheckConfig",
    "CheckReport",
    "ContactStructure",
    "FieldElem",
    "MetricField",
    "OneForm",
    "Point",
    "Poly",
    "RatFun",
    "Scenario",
    "ScenarioError",
    "SlantReport",
    "SmoothMap",
    "SubmersionSetup",
    "Tensor11",
    "VectorField",
    "build_setup",
    "check_almost_contact",
    "check_sasakian",
    "decompose",
    "oneill_A",
    "oneill_T",
    "parse_poly",
    "run",
    "run_checks",
    "slant_classify",
    "splitting_at",
    "standard_sasakian",
]
