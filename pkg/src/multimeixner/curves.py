"""Spectral curves, the physical branch phi0, branch points, densities and the S-curve.

Three algebraic curves appear:

* classical:   z E^2 + ((1/c - 1) - (1/c + 1) z) E + z/c = 0
* first kind:  the cubic obtained by clearing
               z = 2/(phi-1) - 1/(c1 phi-1) - 1/(c2 phi-1)
* second kind: x^2 phi^3 - ((2x^2-2x-1) s + (x+1)^2) phi^2
               + s x ((x-2) s + 2(x+1)) phi - s^2 x^2 = 0,   s = 1/c

The branch ``phi0`` behaves like ``1 + m/z`` at infinity (``m`` is the total
mass, 1 or 2) and the limiting zero density is ``|arg phi0(x + i0)| / pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np
from scipy.interpolate import BarycentricInterpolator

from .params import Params, ParamsClassical, ParamsFirst, ParamsSecond, kind_of


class CurveError(RuntimeError):
    """Continuation, tracing or root-finding failure on a spectral curve."""


class SingularInput(ValueError):
    """Point where the leading coefficient of a curve equation vanishes."""


# ---------------------------------------------------------------------------
# Curve equations


def cubic_coeffs_first(z, a1: float, a2: float):
    """Coefficients (highest first) of the cleared first-kind cubic in phi."""
    z = np.asarray(z, dtype=complex)
    A = a1 * a2 * z
    B = -3 * a1 * a2 * z - z * a1 + a1 - z * a2 + a2
    C = -2 + z - a2 - a1 + 2 * z * a2 + 2 * z * a1 + 3 * a1 * a2 * z
    D = -z * (a1 + 1) * (a2 + 1)
    return np.stack(np.broadcast_arrays(A, B, C, D), axis=-1)


def cubic_coeffs_second(z, sigma: float):
    z = np.asarray(z, dtype=complex)
    A = z * z
    B = -((2 * z * z - 2 * z - 1) * sigma + (z + 1) ** 2)
    C = sigma * z * ((z - 2) * sigma + 2 * (z + 1))
    D = -sigma * sigma * z * z
    return np.stack(np.broadcast_arrays(A, B, C, D), axis=-1)


def quadratic_coeffs_classical(z, c: float):
    z = np.asarray(z, dtype=complex)
    A = z
    B = (1 / c - 1) - (1 / c + 1) * z
    C = z / c
    return np.stack(np.broadcast_arrays(A, B, C), axis=-1)


def curve_coeffs(kind: str, params: Params, z):
    if kind == "first":
        return cubic_coeffs_first(z, params.a1, params.a2)
    if kind == "second":
        return cubic_coeffs_second(z, params.sigma)
    if kind == "classical":
        return quadratic_coeffs_classical(z, params.c)
    raise ValueError(f"unknown kind {kind!r}")


def discriminant_first(z, a1: float, a2: float):
    """Discriminant in phi of the cleared first-kind cubic (a quartic in z)."""
    q4 = (a1 - a2) ** 2
    q3 = -6 * (a1 - a2) ** 2 * (a1 + a2 + 1)
    q2 = (a1**4 + 28 * a1**3 * a2 + 16 * a1**3 - 54 * a1**2 * a2**2 - 12 * a1**2 * a2
          + 13 * a1**2 + 28 * a1 * a2**3 - 12 * a1 * a2**2 - 22 * a1 * a2 + a2**4
          + 16 * a2**3 + 13 * a2**2)
    q1 = -2 * (a1 + a2 + 1) * (2 * a1**3 * a2 + a1**3 + 4 * a1**2 * a2**2 + 7 * a1**2 * a2
                               + 6 * a1**2 + 2 * a1 * a2**3 + 7 * a1 * a2**2 - 4 * a1 * a2
                               + a2**3 + 6 * a2**2)
    q0 = (a1 + a2) ** 2 * (a1 + a2 + 2) ** 2
    return np.array([q4, q3, q2, q1, q0], dtype=float)


def discriminant_second_factor(sigma: float):
    """Cubic factor ``Q`` in ``disc = s^3 z^2 (s-1)^2 Q(z)`` for the second kind."""
    return np.array([4 * (sigma - 1), -(15 * sigma + 12), 12 * (sigma - 1), 4 * (sigma - 1)])


def curve_discriminant(kind: str, params: Params, z):
    """Exact discriminant (in the curve variable) at ``z``, without cancellation."""
    z = np.asarray(z)
    if kind == "first":
        return np.polyval(discriminant_first(z, params.a1, params.a2), z)
    if kind == "second":
        s = params.sigma
        return s**3 * z * z * (s - 1) ** 2 * np.polyval(discriminant_second_factor(s), z)
    if kind == "classical":
        A, B, C = np.moveaxis(quadratic_coeffs_classical(z, params.c), -1, 0)
        d = B * B - 4 * A * C
        return d.real if np.isrealobj(z) else d
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Root solving


def _polish(coeffs: np.ndarray, roots: np.ndarray, steps: int = 2) -> np.ndarray:
    """Newton polish each root; keeps a step only when the residual drops."""
    deg = coeffs.shape[-1] - 1
    dcoeffs = coeffs[..., :-1] * np.arange(deg, 0, -1)
    for _ in range(steps):
        p = _horner(coeffs, roots)
        dp = _horner(dcoeffs, roots)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = roots - p / dp
        ok = np.isfinite(cand) & (np.abs(_horner(coeffs, cand)) < np.abs(p))
        roots = np.where(ok, cand, roots)
    return roots


def _horner(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate polynomials; ``x`` either matches ``coeffs.shape[:-1]`` or has one extra axis."""
    c = coeffs if x.ndim == coeffs.ndim - 1 else coeffs[..., None, :]
    out = np.zeros(np.broadcast_shapes(c.shape[:-1], x.shape), dtype=complex)
    for k in range(coeffs.shape[-1]):
        out = out * x + c[..., k]
    return out


def poly_roots(coeffs) -> np.ndarray:
    """Roots of many low-degree polynomials at once (companion eigenvalues + Newton).

    ``coeffs`` has shape ``(..., deg+1)`` with the highest degree first.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if np.any(coeffs[..., 0] == 0):
        raise SingularInput("leading coefficient vanishes")
    deg = coeffs.shape[-1] - 1
    monic = coeffs[..., 1:] / coeffs[..., :1]
    comp = np.zeros(coeffs.shape[:-1] + (deg, deg), dtype=complex)
    comp[..., 0, :] = -monic
    for i in range(1, deg):
        comp[..., i, i - 1] = 1.0
    roots = np.linalg.eigvals(comp)
    roots = _polish(coeffs, roots)
    return roots


@dataclass(frozen=True)
class CubicRoots:
    roots: np.ndarray
    residual: float


def _cubic_result(coeffs) -> CubicRoots:
    r = poly_roots(coeffs)
    res = float(np.max(np.abs(_horner(np.asarray(coeffs, dtype=complex), r))))
    return CubicRoots(r, res)


def cubic_first(z: complex, c1: float, c2: float) -> CubicRoots:
    """Roots of the cleared first-kind cubic; ``z`` may be an array."""
    if np.any(np.asarray(z) == 0):
        raise SingularInput("z = 0 is a coefficient degeneracy of the first-kind cubic")
    a1, a2 = c1 / (1 - c1), c2 / (1 - c2)
    return _cubic_result(cubic_coeffs_first(z, a1, a2))


def cubic_second(z: complex, c: float) -> CubicRoots:
    if np.any(np.asarray(z) == 0):
        raise SingularInput("z = 0 is a double pole of the second-kind curve")
    return _cubic_result(cubic_coeffs_second(z, 1 / c))


def first_kind_rational_residual(phi, z, c1: float, c2: float):
    """``|z - (2/(phi-1) - 1/(c1 phi-1) - 1/(c2 phi-1))|``."""
    return np.abs(z - (2 / (phi - 1) - 1 / (c1 * phi - 1) - 1 / (c2 * phi - 1)))


def classical_E(z: complex, c: float) -> Tuple[complex, complex]:
    """Both roots of the classical quadratic; the first one tends to 1 at infinity."""
    if z == 0:
        raise SingularInput("z = 0 is a pole/zero coincidence of the classical curve")
    r = poly_roots(quadratic_coeffs_classical(z, c))
    target = 1 + 1 / z
    r = sorted(r, key=lambda v: abs(v - target))
    return complex(r[0]), complex(r[1])


def classical_branch_points(c: float) -> Tuple[float, float]:
    e1 = (1 - math.sqrt(c)) / (1 + math.sqrt(c))
    return e1, 1 / e1


# ---------------------------------------------------------------------------
# Branch points


@dataclass(frozen=True)
class BranchSet:
    kind: str
    real_points: np.ndarray
    complex_pair: Optional[Tuple[complex, complex]] = None

    @property
    def e2(self) -> float:
        return float(self.real_points[-1])

    @property
    def e1(self) -> float:
        pos = self.real_points[self.real_points > 0]
        return float(pos[0])

    @property
    def e_minus(self) -> Optional[float]:
        neg = self.real_points[self.real_points < 0]
        return float(neg[0]) if neg.size else None

    def all_points(self) -> np.ndarray:
        pts = list(self.real_points.astype(complex))
        if self.complex_pair is not None:
            pts.extend(self.complex_pair)
        return np.array(pts)

    def min_gap(self) -> float:
        pts = self.all_points()
        d = np.abs(pts[:, None] - pts[None, :])
        d[np.diag_indices_from(d)] = np.inf
        return float(d.min())


IMAG_TOL = 1e-9


def _polish_real_poly(p: np.ndarray, roots: np.ndarray) -> np.ndarray:
    dp = np.polyder(p)
    for _ in range(3):
        v = np.polyval(p, roots)
        d = np.polyval(dp, roots)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = roots - v / d
        ok = np.isfinite(cand) & (np.abs(np.polyval(p, cand)) < np.abs(v))
        roots = np.where(ok, cand, roots)
    return roots


def branch_points(params: Params, kind: Optional[str] = None) -> BranchSet:
    kind = kind or kind_of(params)
    if kind == "classical":
        e1, e2 = classical_branch_points(params.c)
        return BranchSet(kind, np.array([e1, e2]))
    if kind == "first":
        p = discriminant_first(0.0, params.a1, params.a2)
    elif kind == "second":
        p = discriminant_second_factor(params.sigma)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    roots = np.roots(p)
    if roots.size != p.size - 1 or not np.all(np.isfinite(roots)):
        raise CurveError("discriminant root-finding failed")
    roots = _polish_real_poly(p, roots.astype(complex))
    is_real = np.abs(roots.imag) < IMAG_TOL * np.maximum(1.0, np.abs(roots))
    real = np.sort(roots[is_real].real)
    cplx = roots[~is_real]
    pair = None
    if cplx.size == 2:
        up = cplx[np.argmax(cplx.imag)]
        pair = (complex(up.real, abs(up.imag)), complex(up.real, -abs(up.imag)))
    elif cplx.size > 2:
        # two conjugate pairs: keep the one closest to the real axis
        up = cplx[cplx.imag > 0]
        up = up[np.argsort(np.abs(up.imag))]
        pair = (complex(up[0]), complex(up[0]).conjugate())
    return BranchSet(kind, real, pair)


# ---------------------------------------------------------------------------
# Branch continuation


def _mass(kind: str) -> int:
    return 1 if kind == "classical" else 2


def _roots(kind, params, z):
    return poly_roots(curve_coeffs(kind, params, z))


def _step(kind, params, x, y0, y1, phi, depth):
    r = _roots(kind, params, x + 1j * y1)
    d = np.abs(r - phi[:, None])
    order = np.argsort(d, axis=1)
    i0 = order[:, 0]
    d1 = np.take_along_axis(d, order[:, :1], 1)[:, 0]
    d2 = np.take_along_axis(d, order[:, 1:2], 1)[:, 0]
    new = r[np.arange(len(phi)), i0]
    amb = d1 > 0.5 * d2
    if amb.any() and depth < 24:
        ym = math.sqrt(y0 * y1) if y1 > 0 else 0.5 * y0
        m = np.nonzero(amb)[0]
        mid = _step(kind, params, x[m], y0, ym, phi[m], depth + 1)
        new[m] = _step(kind, params, x[m], ym, y1, mid, depth + 1)
    return new


def track_phi0(kind: str, params: Params, x, y_stop: float):
    """Continue phi0 down vertical lines ``Re z = x`` to height ``y_stop > 0``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = 1e6 * max(1.0, float(np.max(np.abs(x))) if x.size else 1.0)
    z = x + 1j * y
    r = _roots(kind, params, z)
    target = 1 + _mass(kind) / z
    phi = r[np.arange(len(x)), np.argmin(np.abs(r - target[:, None]), axis=1)]
    ratio = 0.7
    while y > y_stop:
        y_next = max(y * ratio, y_stop)
        phi = _step(kind, params, x, y, y_next, phi, 0)
        y = y_next
    return phi


def real_axis_roots(kind: str, params: Params, x):
    """Roots of the curve at real ``x`` with the conjugate pair built from the exact discriminant.

    Direct eigenvalue solves lose the imaginary part of a nearly real pair to
    cancellation; here the pair is rebuilt from the real root ``r0`` through
    ``|r1 - r2| = sqrt(-disc) / (|A| |P'(r0)|)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    co = curve_coeffs(kind, params, x.astype(complex)).real
    disc = curve_discriminant(kind, params, x)
    r = poly_roots(co.astype(complex))
    out = np.empty_like(r)
    deg = co.shape[-1] - 1
    for i in range(len(x)):
        A = co[i, 0]
        if disc[i] >= 0:
            rr = np.sort(r[i].real)
            rr = _polish_real_poly(co[i], rr)
            out[i] = rr
            continue
        if deg == 2:
            ctr = -co[i, 1] / (2 * A)
            im = math.sqrt(-disc[i]) / (2 * abs(A))
            out[i] = [complex(ctr, im), complex(ctr, -im)]
            continue
        j = int(np.argmin(np.abs(r[i].imag)))
        r0 = _polish_real_poly(co[i], np.array([r[i, j].real]))[0]
        dp = np.polyval(np.polyder(co[i]), r0)
        ctr = 0.5 * (-co[i, 1] / A - r0)
        im = 0.5 * math.sqrt(-disc[i]) / (abs(A) * abs(dp))
        out[i] = [r0, complex(ctr, im), complex(ctr, -im)]
    return out


def _y_stop(params: Params, kind: str) -> float:
    return 1e-9 * max(1.0, branch_points(params, kind).e2)


def phi0_on_axis(kind: str, params: Params, x):
    """phi0 at ``x + i0`` and the index of that root in :func:`real_axis_roots`."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    tracked = track_phi0(kind, params, x, _y_stop(params, kind))
    roots = real_axis_roots(kind, params, x)
    idx = np.argmin(np.abs(roots - tracked[:, None]), axis=1)
    return roots[np.arange(len(x)), idx], roots, idx


def branch_phi0(z: complex, params: Params, kind: Optional[str] = None) -> complex:
    """Value of the branch that behaves like ``1 + m/z`` at infinity."""
    kind = kind or kind_of(params)
    z = complex(z)
    if z.imag == 0.0:
        bs = branch_points(params, kind)
        if 0.0 <= z.real <= bs.e2:
            raise CurveError("z lies on the cut [0, e2]")
        return complex(phi0_on_axis(kind, params, [z.real])[0][0])
    up = z.imag > 0
    w = z if up else z.conjugate()
    phi = complex(track_phi0(kind, params, [w.real], w.imag)[0])
    return phi if up else phi.conjugate()


# ---------------------------------------------------------------------------
# Densities


@dataclass(frozen=True)
class Panel:
    """One quadrature panel of a density.

    ``mapping`` is ``"cheb"`` for ``x = a + (b-a)(1-cos p)/2`` with ``p`` in
    ``[0, pi]``, or ``"ray"`` for ``x = b - (p/(1-p))^2`` with ``p`` in
    ``[0, 1)`` (the half line ``(-inf, b]``).
    """

    a: float
    b: float
    mapping: str
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    constant: Optional[float] = None

    @property
    def p_range(self) -> Tuple[float, float]:
        return (0.0, math.pi) if self.mapping == "cheb" else (0.0, 1.0)

    def x_of(self, p):
        p = np.asarray(p, dtype=float)
        if self.mapping == "cheb":
            return self.a + (self.b - self.a) * (1 - np.cos(p)) / 2
        s = p / (1 - p)
        return self.b - s * s

    def dx_dp(self, p):
        p = np.asarray(p, dtype=float)
        if self.mapping == "cheb":
            return (self.b - self.a) * np.sin(p) / 2
        return 2 * p / (1 - p) ** 3

    def p_of(self, x):
        x = np.asarray(x, dtype=float)
        if self.mapping == "cheb":
            u = np.clip(1 - 2 * (x - self.a) / (self.b - self.a), -1, 1)
            return np.arccos(u)
        s = np.sqrt(np.maximum(self.b - x, 0.0))
        return s / (1 + s)

    @property
    def xs(self) -> np.ndarray:
        return self.x_of(self.nodes)

    @property
    def quad_weights(self) -> np.ndarray:
        """Weights ``w`` with ``sum w f(xs)`` approximating ``int f dx`` over the panel."""
        return self.weights * self.dx_dp(self.nodes)

    @property
    def mass(self) -> float:
        return float(np.sum(self.quad_weights * self.values))

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.mapping == "cheb":
            return (x >= self.a) & (x <= self.b)
        return x <= self.b

    @cached_property
    def _value_interp(self):
        return BarycentricInterpolator(self.nodes, self.values)

    @cached_property
    def _mass_interp(self):
        return BarycentricInterpolator(self.nodes, self.values * self.dx_dp(self.nodes))

    def mass_density(self, p):
        """Density with respect to the panel variable, ``lambda'(x(p)) dx/dp``.

        Interpolated directly: on the half line ``dx/dp`` blows up while the
        product stays bounded.
        """
        p = np.asarray(p, dtype=float)
        if self.constant is not None:
            return self.constant * self.dx_dp(p)
        return np.maximum(self._mass_interp(p), 0.0)

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.constant is not None:
            return np.full(x.shape, self.constant)
        return np.clip(self._value_interp(self.p_of(x)), 0.0, 1.0)

    def mass_below(self, x: float) -> float:
        """Mass of the part of the panel lying left of ``x``."""
        if self.mapping == "cheb":
            if x <= self.a:
                return 0.0
            if x >= self.b:
                return self.mass
            if self.constant is not None:
                return self.constant * (x - self.a)
            lo, hi = 0.0, float(self.p_of(x))
        else:
            if x >= self.b:
                return self.mass
            if self.constant is not None:
                raise ValueError("constant density on an infinite panel")
            lo, hi = float(self.p_of(x)), 1.0
        g, w = np.polynomial.legendre.leggauss(len(self.nodes))
        p = lo + (hi - lo) * (g + 1) / 2
        return float(np.sum(w * self.mass_density(p)) * (hi - lo) / 2)


def _gauss(lo: float, hi: float, n: int):
    g, w = np.polynomial.legendre.leggauss(n)
    return lo + (hi - lo) * (g + 1) / 2, w * (hi - lo) / 2


@dataclass(frozen=True)
class DensityGrid:
    support: Tuple[float, float]
    xs: np.ndarray
    values: np.ndarray
    mass: float
    panels: List[Panel] = field(repr=False)
    e_points: Tuple[float, ...] = ()
    saturation_end: Optional[float] = None

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for p in self.panels:
            m = p.contains(x) & (out == 0)
            if m.any():
                out[m] = p.density(x[m])
        return out

    def cdf(self, x):
        """Mass of the density to the left of each ``x``."""
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([sum(p.mass_below(v) for p in self.panels) for v in xa])
        return out if np.ndim(x) else float(out[0])

    def nodes(self):
        """Quadrature nodes and weights (density included) over all panels."""
        xs = np.concatenate([p.xs for p in self.panels])
        ws = np.concatenate([p.quad_weights * p.values for p in self.panels])
        return xs, ws

    @classmethod
    def from_panels(cls, panels: List[Panel], e_points=(), saturation_end=None) -> "DensityGrid":
        panels = sorted(panels, key=lambda p: p.b)
        lo = -math.inf if panels[0].mapping == "ray" else panels[0].a
        xs = np.concatenate([p.xs for p in panels])
        vals = np.concatenate([p.values for p in panels])
        mass = float(sum(p.mass for p in panels))
        return cls((lo, panels[-1].b), xs, vals, mass, panels, tuple(e_points), saturation_end)

    @classmethod
    def uniform(cls, a: float, b: float, height: float = 1.0, n: int = 16) -> "DensityGrid":
        """Constant density on ``[a, b]``; handy as a reference measure."""
        nodes, w = _gauss(0.0, math.pi, n)
        panel = Panel(a, b, "cheb", nodes, w, np.full(n, height), constant=height)
        return cls.from_panels([panel])


def _panel(kind, params, a, b, mapping, n, evaluator) -> Panel:
    lo, hi = (0.0, math.pi) if mapping == "cheb" else (0.0, 1.0)
    nodes, w = _gauss(lo, hi, n)
    tmp = Panel(a, b, mapping, nodes, w, np.zeros(n))
    vals = evaluator(tmp.xs)
    vals = np.where(np.abs(vals - 1) < 1e-8, np.minimum(vals, 1.0), vals)
    vals = np.where(np.abs(vals) < 1e-8, np.maximum(vals, 0.0), vals)
    const = None
    for level in (0.0, 1.0):
        if np.all(np.abs(vals - level) < 1e-13):
            const = level
            vals = np.full(n, level)
    return Panel(a, b, mapping, nodes, w, vals, const)


def _arg_density(z):
    return np.abs(np.angle(z)) / math.pi


def density_lambda(params: Params, kind: Optional[str] = None, M: int = 96) -> DensityGrid:
    """Limiting zero density on ``[0, e2]`` from ``|arg phi0(x + i0)| / pi``.

    The support is split at every real branch point inside ``(0, e2)``; each
    panel uses Gauss nodes in the angle variable so square-root edges are
    integrated without loss.
    """
    kind = kind or kind_of(params)
    bs = branch_points(params, kind)
    cuts = [0.0] + [float(e) for e in bs.real_points if e > 0]

    def lam(x):
        phi, _, _ = phi0_on_axis(kind, params, x)
        return _arg_density(phi)

    panels = [_panel(kind, params, a, b, "cheb", M, lam) for a, b in zip(cuts[:-1], cuts[1:])]
    sat = None
    for p in panels:
        if p.constant == 1.0:
            sat = p.b
        else:
            break
    return DensityGrid.from_panels(panels, tuple(float(e) for e in bs.real_points), sat)


def density_mu_second(c, M: int = 96) -> DensityGrid:
    """Second-kind measure on the negative half line.

    It saturates (density 1) on ``[e-, 0]`` and has an equilibrium tail on
    ``(-inf, e-]`` where the two non-principal roots form a conjugate pair.
    """
    params = c if isinstance(c, ParamsSecond) else _second_proxy(float(c))
    bs = branch_points(params, "second")
    em = bs.e_minus

    def mu(x):
        _, roots, idx = phi0_on_axis("second", params, x)
        mask = np.ones(roots.shape, dtype=bool)
        mask[np.arange(len(x)), idx] = False
        others = roots[mask].reshape(len(x), -1)
        return _arg_density(others).mean(axis=1)

    panels = [
        _panel("second", params, -math.inf, em, "ray", max(M, 128), mu),
        _panel("second", params, em, 0.0, "cheb", M, mu),
    ]
    return DensityGrid.from_panels(panels, tuple(float(e) for e in bs.real_points), em)


def _second_proxy(c: float) -> ParamsSecond:
    # the curve only depends on c; any admissible beta pair will do
    return ParamsSecond(1.5, 1.0 + 1 / math.pi, c)


# ---------------------------------------------------------------------------
# S-curve


@dataclass(frozen=True)
class GammaTrace:
    points: np.ndarray
    endpoints: Tuple[complex, complex]
    density: np.ndarray
    arclength: np.ndarray

    @property
    def mass(self) -> float:
        """Mass of mu: trapezoid with square-root corrections on the end segments."""
        s, f = self.arclength, self.density
        h = np.diff(s)
        total = np.sum(0.5 * h * (f[1:] + f[:-1]))
        # f vanishes like sqrt at both ends
        total += h[0] * (2.0 / 3.0 * f[1] - 0.5 * f[1])
        total += h[-1] * (2.0 / 3.0 * f[-2] - 0.5 * f[-2])
        return float(total)

    def min_distance_to(self, z0: complex) -> float:
        a, b = self.points[:-1], self.points[1:]
        d = b - a
        t = np.clip(np.real((z0 - a) * np.conj(d)) / np.maximum(np.abs(d) ** 2, 1e-300), 0, 1)
        return float(np.min(np.abs(a + t * d - z0)))

    def min_distance_to_positive_axis(self) -> float:
        a, b = self.points[:-1], self.points[1:]
        out = math.inf
        for p, q in zip(a, b):
            if p.imag * q.imag <= 0 and p.imag != q.imag:
                xr = p.real + (q.real - p.real) * p.imag / (p.imag - q.imag)
                if xr >= 0:
                    return 0.0
            for w in (p, q):
                out = min(out, abs(w.imag) if w.real >= 0 else abs(w))
        return out


def _log_q(phi, s1, s2):
    return np.log(np.abs((phi - 1) ** 2 / ((phi - s1) * (phi - s2))))


def _match(prev, roots):
    """Assign the roots nearest to ``prev`` (two entries) without reuse."""
    d = np.abs(roots[None, :] - np.asarray(prev)[:, None])
    i = int(np.argmin(d[0]))
    d[1, i] = np.inf
    j = int(np.argmin(d[1]))
    return roots[i], roots[j]


def trace_gamma(c1: float, c2: float, step: float = 0.01, max_steps: int = 20000) -> GammaTrace:
    """Trace the S-curve joining the complex branch pair of the first-kind curve.

    The level set is ``Re int_e^z (ln phi_j - ln phi_k) = 0`` where ``phi_j``,
    ``phi_k`` are the two roots merging at ``e``.  The integral is evaluated
    through the exact antiderivative
    ``z ln phi - ln[(phi-1)^2 / ((phi-s1)(phi-s2))]``.
    """
    p = ParamsFirst(1.0, c1, c2)
    bs = branch_points(p, "first")
    if bs.complex_pair is None:
        raise CurveError("no complex branch pair: parameters outside the GN domain")
    e, ebar = bs.complex_pair
    s1, s2 = p.sigma1, p.sigma2
    scale = abs(e)
    h = step * scale

    def roots(z):
        return poly_roots(cubic_coeffs_first(z, p.a1, p.a2))

    def level(z, pj, pk, w):
        return (z * w).real - _log_q(pj, s1, s2) + _log_q(pk, s1, s2)

    # merging pair at e: the two closest roots
    r_e = roots(e)
    d = np.abs(r_e[:, None] - r_e[None, :]) + np.diag([np.inf] * 3)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    phi_e = 0.5 * (r_e[i] + r_e[j])

    # local directions: F ~ K (z-e)^{3/2}
    r0 = 1e-4 * scale
    rp = roots(e + r0)
    pj, pk = _match([phi_e, phi_e], rp)
    if abs(pj - pk) < 1e-14:
        raise CurveError("branch pair is not simple")
    kappa = (pj - pk) / (2 * math.sqrt(r0))
    argK = np.angle(kappa / phi_e)
    dirs = [(math.pi / 2 + m * math.pi - argK) / 1.5 for m in range(3)]

    box = 4 * max(scale, bs.e2)

    def advance(z, pj, pk, w, t, hl):
        zn = z + hl * t
        qj, qk = _match([pj, pk], roots(zn))
        wn = w + np.log((qj / qk) / np.exp(w))
        for _ in range(6):
            f = level(zn, qj, qk, wn)
            if abs(f) < 1e-12 * max(1.0, abs(zn) * abs(wn)):
                break
            zn = zn - f * np.conj(wn) / abs(wn) ** 2
            qj, qk = _match([qj, qk], roots(zn))
            wn = w + np.log((qj / qk) / np.exp(w))
        else:
            return None
        # reject steps that jump between sheets or drift far off the predictor
        if abs(zn - z) > 2 * hl or abs(wn - w) > 0.5 * max(abs(w), 1e-3) + 0.5:
            return None
        return zn, qj, qk, wn

    candidates = []
    for alpha in dirs:
        z = e + 10 * r0 * np.exp(1j * alpha)
        pj, pk = _match([phi_e, phi_e], roots(z))
        w = np.log(pj / pk)
        pts, dens = [e, z], [0.0, abs(w) / (2 * math.pi)]
        tangent = np.exp(1j * alpha)
        for _ in range(max_steps):
            t = 1j * np.conj(w) / abs(w)
            if (t * np.conj(tangent)).real < 0:
                t = -t
            # finer steps near the branch point and near the pole at the origin
            hl = min(h, max(0.25 * abs(z - e), 10 * r0), max(0.25 * abs(z), 1e-9 * scale))
            res = None
            for _ in range(30):
                res = advance(z, pj, pk, w, t, hl)
                if res is not None:
                    break
                hl *= 0.5
            if res is None:
                break
            zn, pj, pk, w = res
            tangent = (zn - z) / abs(zn - z)
            if zn.imag <= 0:
                # first crossing of the real axis: close the curve by reflection
                lam = z.imag / (z.imag - zn.imag)
                xr = complex(z.real + lam * (zn.real - z.real), 0.0)
                pts.append(xr)
                dens.append((1 - lam) * dens[-1] + lam * abs(w) / (2 * math.pi))
                candidates.append((xr.real, pts, dens))
                break
            z = zn
            pts.append(z)
            dens.append(abs(w) / (2 * math.pi))
            if abs(z) > box:
                break
    if not candidates:
        raise CurveError("S-curve trace never reached the real axis")
    # the S-curve is the trajectory meeting the axis furthest to the left
    _, half, hdens = min(candidates, key=lambda c: c[0])
    half = np.array(half)
    pts = np.concatenate([half, np.conj(half[-2::-1])])
    dens = np.concatenate([hdens, hdens[-2::-1]])
    s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts)))])
    return GammaTrace(pts, (e, ebar), dens, s)
