"""Break the slant example with a point-dependent tilt.

A constant change of the map keeps the angle constant, since a
two-dimensional complement of xi always has one angle per point. Adding
y2^2 to the first component makes the tilt vary across the manifold, and
the angle test and the psi^2 identity fail together.

    python3 demos/perturbation.py
"""

from slantsub import fixtures
from slantsub import slant as sl
from slantsub.sampling import CheckConfig
from slantsub.scenario import build_setup

cfg = CheckConfig(samples=7, seed=42)
for label, sc in (("original", fixtures.scenario("SLANT5")), ("perturbed", fixtures.perturbed_slant5_scenario())):
    setup = build_setup(sc)
    slant = sl.slant_classify(setup, cfg)
    t3 = sl.check_theorem3(setup, cfg, slant)
    print(f"{label}: map {sc['map']}")
    print(f"  classification {slant.classification}, cos^2 in [{float(slant.cos2_min):.4f}, {float(slant.cos2_max):.4f}]")
    print(f"  psi^2 identity holds: {t3.evidence['identity_holds']}, detectors agree: {t3.verdict == 'pass'}\n")
