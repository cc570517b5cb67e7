"""Finite-difference oracles for the symbolic Christoffel and curvature code.

These only ever see the metric as a black-box float function, so they share
no code path with the exact differentiation in ``geometry``.  Central
differences are sharpened with one Richardson step (error O(h^4)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .expr import Point
from .geometry import MetricField, riemann_at
from .sampling import random_rational

__all__ = ["OracleComparison", "compare_metric", "fd_christoffel", "fd_riemann", "metric_function", "probe_points"]


def metric_function(g: MetricField):
    """x (array) -> metric matrix at x, in float."""

    def f(x):
        return np.array(g.at(Point(tuple(float(c) for c in x), "float")), dtype=float)

    return f


def _richardson(f, x, axis, h):
    def central(step):
        e = np.zeros_like(x)
        e[axis] = step
        return (f(x + e) - f(x - e)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


def fd_christoffel(gfun, x, h: float = 1e-3):
    """``[k][i][j]`` array of Gamma^k_ij from finite differences of the metric."""
    x = np.asarray(x, dtype=float)
    n = x.size
    dg = np.array([_richardson(gfun, x, a, h) for a in range(n)])  # dg[l, i, j] = d_l g_ij
    # lower[i, j, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    lower = 0.5 * (dg + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0))
    ginv = np.linalg.inv(gfun(x))
    return np.einsum("kl,ijl->kij", ginv, lower)


def fd_riemann(gfun, x, h: float = 1e-2, inner_h: float = 1e-3):
    """``[l][i][j][k]`` with R(d_i, d_j) d_k = R^l_ijk d_l."""
    x = np.asarray(x, dtype=float)
    G = fd_christoffel(gfun, x, inner_h)
    dG = np.array([_richardson(lambda y: fd_christoffel(gfun, y, inner_h), x, a, h) for a in range(x.size)])
    # dG[a, l, j, k] = d_a Gamma^l_jk
    R = (
        np.einsum("iljk->lijk", dG)
        - np.einsum("jlik->lijk", dG)
        + np.einsum("lim,mjk->lijk", G, G)
        - np.einsum("ljm,mik->lijk", G, G)
    )
    return R


def probe_points(dim: int, count: int = 20, seed: int = 7):
    """Seeded rational probe points in [-2, 2]^dim."""
    rng = random.Random(f"oracle:{seed}:{dim}")
    return [Point(tuple(random_rational(rng) for _ in range(dim)), "exact") for _ in range(count)]


@dataclass
class OracleComparison:
    probes: int
    christoffel_error: float
    riemann_error: float

    @property
    def max_error(self) -> float:
        return max(self.christoffel_error, self.riemann_error)


def compare_metric(g: MetricField, count: int = 20, seed: int = 7, curvature: bool = True) -> OracleComparison:
    """Largest |exact - finite difference| over all Christoffel and curvature
    components at ``count`` probe points."""
    gfun = metric_function(g)
    ce = re = 0.0
    pts = probe_points(g.chart.dim, count, seed)
    for p in pts:
        x = np.array([float(c) for c in p.coords])
        exact = np.array(g.christoffel_at(p), dtype=float)
        ce = max(ce, float(np.abs(exact - fd_christoffel(gfun, x)).max()))
        if curvature:
            exact_R = np.array(riemann_at(g, p), dtype=float)
            re = max(re, float(np.abs(exact_R - fd_riemann(gfun, x)).max()))
    return OracleComparison(len(pts), ce, re)
