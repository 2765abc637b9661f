"""Regimes of the first-kind family in the ``(c1, c2)`` square.

``A``: four real branch points.  ``GN``: two real points and a complex pair.
``N`` is the part of ``GN`` where the vector problem with the Nikishin
interaction matrix describes the limit; its edge is ``n_boundary_residual = 0``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .curves import BranchSet, branch_points
from .params import ParamsFirst

LABELS = ("N", "GN_not_N", "A", "boundary_N", "boundary_GN")
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RegimeLabel:
    label: str
    branch_summary: BranchSet

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")


def nikishin_bounds(c2: float) -> Tuple[float, float]:
    """Open interval of ``c1`` values that put ``(c1, c2)`` in ``N``."""
    lo = c2 * (1 - SQRT2) / (2 * c2 - 1 - SQRT2)
    hi = c2 * (1 + SQRT2) / (2 * c2 - 1 + SQRT2)
    return lo, hi


def in_nikishin_domain(c1: float, c2: float) -> bool:
    lo, hi = nikishin_bounds(c2)
    return lo < c1 < hi


def n_boundary_residual(c1: float, c2: float) -> float:
    s1, s2 = 1.0 / c1, 1.0 / c2
    return (s1 + s2 - 2) ** 2 - 2 * (s1 - s2) ** 2


def n_boundary_distance(c1: float, c2: float) -> float:
    """First-order distance ``|R| / |grad R|`` to the zero set of the residual."""
    s1, s2 = 1.0 / c1, 1.0 / c2
    u, v = s1 + s2 - 2, s1 - s2
    # dR/dc_i = dR/dsigma_i * (-sigma_i^2)
    g1 = (2 * u - 4 * v) * -s1 * s1
    g2 = (2 * u + 4 * v) * -s2 * s2
    return abs(n_boundary_residual(c1, c2)) / math.hypot(g1, g2)


def _s(t):
    return -(t * t + 8 * t + 18) * (t + 2) ** 2 / (2 * t)


def _p(t):
    return -(t + 3) ** 3 * (t + 2) ** 3 / t ** 3


def _pair(t: float) -> Optional[Tuple[float, float]]:
    disc = _s(t) ** 2 - 4 * _p(t)
    if disc < 0:
        return None
    r = math.sqrt(disc)
    return (0.5 * (_s(t) - r), 0.5 * (_s(t) + r))


@functools.lru_cache(maxsize=None)
def gn_window() -> Tuple[float, float]:
    """Parameter window ``[t0, -3]``; at ``t0`` the larger root reaches 1."""
    def larger_minus_one(t):
        pr = _pair(t)
        return (pr[1] if pr else 0.5 * _s(t)) - 1.0

    t0 = brentq(larger_minus_one, -4.8, -4.6, xtol=1e-14)
    return t0, -3.0


def gn_boundary_points(t_range: Optional[Tuple[float, float]] = None,
                       samples: int = 200) -> List[Tuple[float, float]]:
    """Pairs ``(c1, c2)``, ``c1 < c2``, on the boundary of ``GN``.

    Both orderings lie on the boundary since the classification is symmetric.
    The window ends are skipped: there one coordinate is exactly 0 or 1.
    """
    lo, hi = gn_window() if t_range is None else t_range
    out = []
    for t in np.linspace(lo, hi, samples + 2)[1:-1]:
        pr = _pair(float(t))
        if pr is None:
            continue
        a, b = pr
        if 0.0 < a < 1.0 and 0.0 < b < 1.0 and abs(a - b) > 1e-8:
            out.append((a, b))
    return out


def gn_boundary_distance(c1: float, c2: float) -> float:
    """Euclidean distance from ``(c1, c2)`` to the ``GN`` boundary curve."""
    lo, hi = gn_window()
    x, y = min(c1, c2), max(c1, c2)

    def dist(t):
        pr = _pair(t)
        if pr is None:
            return math.inf
        return math.hypot(pr[0] - x, pr[1] - y)

    ts = np.linspace(lo, hi, 801)
    d = np.array([dist(t) for t in ts])
    i = int(np.argmin(d))
    a, b = ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)]
    res = minimize_scalar(dist, bounds=(a, b), method="bounded",
                          options={"xatol": 1e-13})
    return float(min(res.fun, d[i]))


def classify(c1: float, c2: float, tol: float = 1e-3) -> RegimeLabel:
    """Regime of ``(c1, c2)``; points within ``tol`` of a boundary get a boundary label."""
    p = ParamsFirst(1.0, c1, c2)
    bs = branch_points(p, "first")
    if gn_boundary_distance(c1, c2) < tol:
        return RegimeLabel("boundary_GN", bs)
    if bs.complex_pair is None:
        return RegimeLabel("A", bs)
    if n_boundary_distance(c1, c2) < tol:
        return RegimeLabel("boundary_N", bs)
    # the residual is symmetric, the printed interval is not written that way
    inside = in_nikishin_domain(c1, c2) and in_nikishin_domain(c2, c1)
    return RegimeLabel("N" if inside else "GN_not_N", bs)
