"""Built-in fixture catalog, stored as scenario dictionaries.

Every fixture is a scenario in the same JSON shape the CLI reads, so that
emitting a fixture and running the emitted file reproduce each other.
"""

from __future__ import annotations

import copy

_SLANT5_MAP = ["x1 - 2*sqrt_d*x2 + y1", "2*x1 - 2*sqrt_d*x2 + y1"]

_CATALOG = {
    "SAS3": {
        "description": "standard Sasakian structure on R^3 (n = 1), structure checks only",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 1},
            "checks": ["almost_contact", "sasakian"],
        },
    },
    "SAS5": {
        "description": "standard Sasakian structure on R^5 (n = 2), structure checks only",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 2},
            "checks": ["almost_contact", "sasakian"],
        },
    },
    "SAS7": {
        "description": "standard Sasakian structure on R^7 (n = 3), structure checks only",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 3},
            "checks": ["almost_contact", "sasakian"],
        },
    },
    "HOPF5": {
        "description": "R^5 -> R^4 forgetting z; fibers are Reeb orbits, invariant (vacuously), harmonic",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 2},
            "target": {"dim": 4, "metric": [["1/4", 0, 0, 0], [0, "1/4", 0, 0], [0, 0, "1/4", 0], [0, 0, 0, "1/4"]]},
            "map": ["x1", "x2", "y1", "y2"],
            "checks": [
                "riemannian", "oneill", "fiber_geometry", "harmonic", "slant_classify",
                "connection_ids", "eqW", "theorem4", "prop4", "prop5", "prop6", "lemma4_mu",
            ],
        },
    },
    "ANTI5": {
        "description": "R^5 -> R^3 with kernel span{E1, xi}; anti-invariant, fibers not umbilical",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 2},
            "target": {"dim": 3, "metric": [["1/4", 0, 0], [0, "1/4", 0], [0, 0, "1/4"]]},
            "map": ["x1", "x2", "y2"],
            "checks": [
                "riemannian", "oneill", "fiber_geometry", "harmonic", "slant_classify", "theorem2_witness",
                "theorem3", "lemma3", "connection_ids", "eqW", "eqF", "lemma6_sec1", "theorem4",
                "prop1", "prop2", "prop4", "prop5", "prop6", "lemma4_mu",
            ],
        },
    },
    "INV7": {
        "description": "R^7 -> R^4 with phi-invariant kernel span{E1, E4, xi}; invariant, harmonic",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 3},
            "target": {"dim": 4, "metric": [["1/4", 0, 0, 0], [0, "1/4", 0, 0], [0, 0, "1/4", 0], [0, 0, 0, "1/4"]]},
            "map": ["x2", "x3", "y2", "y3"],
            "checks": [
                "riemannian", "oneill", "fiber_geometry", "harmonic", "slant_classify", "theorem3",
                "lemma3", "connection_ids", "eqW", "theorem4", "prop2", "prop4", "prop6",
            ],
        },
    },
    "SLANT5": {
        "description": "the slant example on R^5 -> R^2 with the constant target metric restoring S2",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 2},
            "target": {"dim": 2, "metric": [["13/36", "-11/36"], ["-11/36", "5/18"]]},
            "map": list(_SLANT5_MAP),
            "checks": [
                "riemannian", "oneill", "slant_classify", "claims", "theorem2_witness", "theorem3",
                "lemma3", "corollary1", "lemma5", "connection_ids", "eqW", "eqF", "lemma6_sec1",
                "prop2", "prop3", "prop4", "prop5", "prop6", "lemma4_mu",
            ],
            "claims": {
                "slant_angle": "pi/4",
                "horizontal_frame": [["2", 0, 0, "-1/2*sqrt_d", 0], [0, 0, 1, 0, 0]],
                "kernel_frame": [[2, 0, 0, "1/2*sqrt_d", 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]],
                "frame_basis": "phi_basis",
            },
        },
    },
    "XI-HORIZ": {
        "description": "R^3 -> R^2, (x1, z); kernel span{E1} with xi horizontal; not Riemannian (S2 fails)",
        "scenario": {
            "source": {"type": "sasakian_R", "n": 1},
            "target": {"dim": 2, "metric": [["1/4", 0], [0, "1/4"]]},
            "map": ["x1", "z"],
            "checks": ["riemannian", "slant_classify", "theorem1", "prop4"],
        },
    },
}


def names():
    return list(_CATALOG)


def describe(name: str) -> str:
    return _entry(name)["description"]


def _entry(name: str):
    key = name.upper()
    if key not in _CATALOG:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_CATALOG)}")
    return _CATALOG[key]


def scenario(name: str) -> dict:
    """The scenario dictionary for a catalog fixture (a fresh copy)."""
    sc = copy.deepcopy(_entry(name)["scenario"])
    sc.setdefault("name", name.upper())
    sc.setdefault("samples", 7)
    sc.setdefault("seed", 42)
    sc.setdefault("mode", "exact")
    return sc


def perturbed_slant5_scenario() -> dict:
    """SLANT5 with a point-dependent tilt of the kernel.

    The extra y2^2 term leaves the kernel unchanged where y2 = 0 and mixes
    a horizontal direction into it elsewhere, so the angle varies from
    point to point.  The map is no longer Riemannian; only the slant
    detectors are meant to run on it.
    """
    sc = scenario("SLANT5")
    sc["name"] = "SLANT5-PERTURBED"
    sc["map"] = ["x1 - 2*sqrt_d*x2 + y1 + y2^2", "2*x1 - 2*sqrt_d*x2 + y1"]
    sc["checks"] = ["slant_classify", "theorem3"]
    sc.pop("claims", None)
    return sc


def build(name: str):
    """SubmersionSetup (or ContactStructure for the SAS fixtures)."""
    from .scenario import build_source, build_setup

    sc = scenario(name)
    if "map" not in sc:
        return build_source(sc["source"])
    return build_setup(sc)
