"""Zeros of stepline polynomials and their scaled counting measures."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import DensityGrid, branch_points
from .polyeval import SteplineSequence, eval_scaled_many


LATTICE_GAP = 1e-4


class ZeroCountError(RuntimeError):
    """Sign-change bracketing did not isolate the expected number of zeros."""


class ComparisonError(ValueError):
    """Two measures with different total mass were compared."""


@dataclass(frozen=True)
class ZeroSet:
    zeros: np.ndarray
    total_degree: int
    scale_n: int
    # absolute accuracy of each zero
    tol: float = 0.0

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=float)
        if z.size != self.total_degree:
            raise ZeroCountError(f"expected {self.total_degree} zeros, got {z.size}")
        if z.size and (z[0] <= 0 or np.any(np.diff(z) <= 0)):
            raise ZeroCountError("zeros must be positive, sorted and distinct")
        object.__setattr__(self, "zeros", z)


@dataclass(frozen=True)
class EmpiricalCDF:
    knots: np.ndarray
    mass: float

    @property
    def step(self) -> float:
        return self.mass / self.knots.size

    def __call__(self, t):
        """Right-continuous value at ``t``."""
        return self.step * np.searchsorted(self.knots, t, side="right")

    def left(self, t):
        return self.step * np.searchsorted(self.knots, t, side="left")


def scale_of(seq: SteplineSequence, k: int) -> int:
    """Scaling ``n`` in ``t = x/n``: the diagonal index for the multiple kinds."""
    return k if seq.kind == "classical" else max(k // 2, 1)


def _signs(seq, xs, k):
    s, _ = eval_scaled_many(seq, xs, k)
    return s


def _bisect(seq, lo, hi, slo, k, tol):
    lo, hi, slo = lo.copy(), hi.copy(), slo.copy()
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        sm = _signs(seq, mid, k)
        exact = sm == 0
        lo = np.where(exact, mid, lo)
        hi = np.where(exact, mid, hi)
        left = (sm == slo) & ~exact
        lo = np.where(left, mid, lo)
        hi = np.where(~left & ~exact, mid, hi)
    return 0.5 * (lo + hi)


def zeros_of(seq: SteplineSequence, k: int, per_zero: int = 20, max_refine: int = 4) -> ZeroSet:
    """All ``k`` zeros of ``P_k`` by sign-change bracketing and bisection.

    The grid covers ``(0, 1.2 k e2]`` with ``per_zero`` points per expected
    zero plus a geometric run towards 0; on a count mismatch it is refined.
    """
    if k > seq.N:
        raise ValueError("k exceeds the length of the sequence")
    n = scale_of(seq, k)
    if k == 0:
        return ZeroSet(np.zeros(0), 0, n)
    e2 = branch_points(seq.params, seq.kind).e2
    xmax = 1.2 * k * max(e2, 1.0)
    tol = 1e-11 * xmax
    density = per_zero
    # zeros in the saturated region sit closer to the lattice than the
    # recurrence resolves, so the grid brackets every integer at +-LATTICE_GAP
    # and keeps clear of it otherwise; the bracket at 0 starts just below 0
    lattice = np.arange(0.0, math.floor(xmax) + 1.0)
    around = np.concatenate([lattice - LATTICE_GAP, lattice + LATTICE_GAP])
    around = around[around < xmax]
    for _ in range(max_refine + 1):
        lin = np.linspace(0.0, xmax, density * k + 1)[1:]
        geo = xmax * np.logspace(-12, 0, 4 * density, endpoint=False) / (density * k)
        base = np.concatenate([geo, lin])
        near = np.abs(base - np.round(base)) < 2 * LATTICE_GAP
        grid = np.unique(np.concatenate([base[~near], around]))
        s = _signs(seq, grid, k)
        on_grid = grid[(s == 0) & (grid > 0)]
        nz = s != 0
        g, sg = grid[nz], s[nz]
        idx = np.nonzero(sg[:-1] != sg[1:])[0]
        # drop brackets that straddle a grid zero already found
        if on_grid.size:
            hit = np.searchsorted(on_grid, g[idx]) != np.searchsorted(on_grid, g[idx + 1])
            idx = idx[~hit]
        roots = _bisect(seq, g[idx], g[idx + 1], sg[idx], k, tol) if idx.size else np.zeros(0)
        # a zero within the resolution of 0 is reported at the tolerance
        roots = np.maximum(roots, tol)
        zs = np.sort(np.concatenate([roots, on_grid]))
        if zs.size == k and (k == 1 or np.all(np.diff(zs) > 0)):
            return ZeroSet(zs, k, n, tol)
        density *= 4
    raise ZeroCountError(f"found {zs.size} sign changes for degree {k}")


def empirical_cdf(z: ZeroSet, mass: float) -> EmpiricalCDF:
    if z.scale_n <= 0:
        raise ValueError("scale_n must be positive")
    return EmpiricalCDF(z.zeros / z.scale_n, float(mass))


def kolmogorov(a: EmpiricalCDF, b: DensityGrid, tol: float = 1e-6) -> float:
    """Sup distance between a step CDF and an integrated density."""
    if abs(a.mass - b.mass) > tol:
        raise ComparisonError(f"masses differ: {a.mass} vs {b.mass}")
    pts = np.unique(np.concatenate([a.knots, b.xs[np.isfinite(b.xs)]]))
    F = np.asarray(b.cdf(pts))
    return float(max(np.max(np.abs(a(pts) - F)), np.max(np.abs(a.left(pts) - F))))


def lattice_interlacing_check(z: ZeroSet) -> bool:
    """At most one zero between consecutive lattice points ``k, k+1``.

    Zeros are only known to ``z.tol``; one lying that close below an integer
    is counted in the cell above it.
    """
    cells = np.floor(z.zeros + z.tol)
    return bool(np.all(np.diff(cells) > 0)) if cells.size > 1 else True
