"""Logarithmic potentials, Cauchy transforms and equilibrium checks."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy import integrate

from .curves import (
    DensityGrid,
    GammaTrace,
    Panel,
    branch_phi0,
    branch_points,
    density_lambda,
    density_mu_second,
    trace_gamma,
)
from .params import Params, ParamsClassical, ParamsFirst, ParamsSecond, kind_of

EDGE_EXCLUSION = 0.01


class QuadratureError(RuntimeError):
    """A potential or transform could not be evaluated to the requested accuracy."""


@dataclass(frozen=True)
class PotentialReport:
    test_points: np.ndarray
    values: np.ndarray
    max_residual: float
    kappa_estimate: Optional[float] = None
    extra: Dict[str, float] = field(default_factory=dict)


def _clog_antider(u):
    # d/dx Re[(x-t) log(x-t) - (x-t)] = ln|x - t|
    u = complex(u)
    if u == 0:
        return 0.0
    return (u * np.log(u) - u).real


def _quad(f, a, b, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, limit=400, epsabs=1e-13, epsrel=1e-11, **kw)
    return val


def _far_from(panel: Panel, t: complex) -> bool:
    # Gauss nodes resolve ln|t - x| once t is a panel length away from the panel
    if panel.mapping == "ray":
        return False
    L = panel.b - panel.a
    if panel.a <= t.real <= panel.b:
        dist = abs(t.imag)
    else:
        dist = abs(t - (panel.a if t.real < panel.a else panel.b))
    return dist > 0.5 * L


def _panel_log_integral(panel: Panel, t: complex) -> float:
    """``int ln|t - x| d lambda(x)`` over one panel."""
    if panel.constant is not None:
        if panel.constant == 0.0:
            return 0.0
        return panel.constant * (_clog_antider(panel.b - t) - _clog_antider(panel.a - t))
    lo, hi = panel.p_range
    m = panel.mass_density
    if _far_from(panel, t):
        return float(np.sum(panel.quad_weights * panel.values * np.log(np.abs(t - panel.xs))))

    def lg(p):
        return math.log(max(abs(t - float(panel.x_of(p))), 1e-300))

    inside = t.imag == 0.0 and bool(panel.contains(t.real)) and (
        panel.mapping == "ray" or panel.a < t.real < panel.b
    )
    if not inside:
        return _quad(lambda p: float(m(p)) * lg(p), lo, hi)
    pt = float(panel.p_of(t.real))
    if not lo < pt < hi:
        return _quad(lambda p: float(m(p)) * lg(p), lo, hi)

    def smooth(p):
        d = abs(p - pt)
        if d < 1e-12:
            return float(m(p)) * math.log(max(abs(float(panel.dx_dp(p))), 1e-300))
        return float(m(p)) * (lg(p) - math.log(d))

    total = _quad(smooth, lo, pt) + _quad(smooth, pt, hi)
    total += _quad(lambda p: float(m(p)), lo, pt, weight="alg-logb", wvar=(0.0, 0.0))
    total += _quad(lambda p: float(m(p)), pt, hi, weight="alg-loga", wvar=(0.0, 0.0))
    return total


def log_potential(d: DensityGrid, t) -> float:
    """``P(t) = -int ln|t - x| d lambda(x)``; real or complex ``t``."""
    t = complex(t)
    return -sum(_panel_log_integral(p, t) for p in d.panels)


def cauchy_transform(d: DensityGrid, z) -> complex:
    """``int d lambda(x) / (z - x)`` for ``z`` off the support."""
    z = complex(z)
    lo, hi = d.support
    if z.imag == 0.0:
        dist = max(lo - z.real, z.real - hi, 0.0)
    elif lo <= z.real <= hi:
        dist = abs(z.imag)
    else:
        dist = abs(z - (lo if z.real < lo else hi))
    if dist <= 1e-6:
        raise QuadratureError("z is too close to the support")
    total = 0j
    for p in d.panels:
        if p.constant is not None:
            if p.constant:
                total += p.constant * np.log((z - p.a) / (z - p.b))
            continue
        total += np.sum(p.quad_weights * p.values / (z - p.xs))
    return complex(total)


def circle_points(radius: float = 5.0, count: int = 20) -> np.ndarray:
    """Points on ``|z| = radius`` at half-integer angles, so none are real."""
    k = np.arange(count)
    return radius * np.exp(2j * np.pi * (k + 0.5) / count)


def verify_h_equals_ln_phi(params: Params, kind: Optional[str] = None, points=None,
                           M: int = 96) -> PotentialReport:
    kind = kind or kind_of(params)
    pts = circle_points() if points is None else np.asarray(points, dtype=complex)
    d = density_lambda(params, kind, M)
    res = np.array([abs(cauchy_transform(d, z) - np.log(branch_phi0(z, params, kind))) for z in pts])
    return PotentialReport(pts, res, float(res.max()))


def _zone(a: float, b: float, n: int) -> np.ndarray:
    L = b - a
    return np.linspace(a + EDGE_EXCLUSION * L, b - EDGE_EXCLUSION * L, n)


def classical_equilibrium(c: float, n: int = 41, M: int = 96,
                          potential_weight: float = 2.0) -> PotentialReport:
    """Flatness of ``w P(t) + t ln(1/c)`` on ``[e1, e2]`` for the classical density.

    With the mass-one density the combination that is constant on the band is
    ``2 P + V`` (the first variation of ``int (P + V/2) d lambda``); pass
    ``potential_weight=1`` to evaluate ``P + V`` instead.  The closed form
    ``1 + ln((1-c)/c)`` is reported next to the estimate.
    """
    p = ParamsClassical(1.0, c)
    d = density_lambda(p, "classical", M)
    e1, e2 = d.e_points
    ts = _zone(e1, e2, n)
    vals = np.array([potential_weight * log_potential(d, t) + t * math.log(1 / c) for t in ts])
    kappa = float(vals.mean())
    closed = 1 + math.log((1 - c) / c)
    return PotentialReport(ts, vals, float(np.max(np.abs(vals - kappa))), kappa,
                           {"kappa_closed_form": closed, "kappa_error": abs(kappa - closed),
                            "mass": d.mass, "potential_weight": potential_weight})


def _gamma_weights(g: GammaTrace) -> np.ndarray:
    """Vertex weights for ``int f dmu`` along the trace (trapezoid, sqrt-corrected ends)."""
    h = np.diff(g.arclength)
    w = np.zeros(len(g.points))
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    w[1] += h[0] / 6.0
    w[-2] += h[-1] / 6.0
    return w * g.density


def gamma_potential(g: GammaTrace, t: complex) -> float:
    """``-int ln|t - z| dmu(z)`` for ``t`` off the trace."""
    w = _gamma_weights(g)
    return float(-np.sum(w * np.log(np.abs(t - g.points))))


def gamma_potential_on_curve(g: GammaTrace, i: int) -> float:
    """Potential of mu at interior vertex ``i`` of the trace.

    The two segments touching the vertex carry the logarithmic singularity and
    are integrated exactly for a linear density; the rest use the trapezoid
    rule (square-root shaped on the two end segments).
    """
    pts, f = g.points, g.density
    h = np.diff(g.arclength)
    with np.errstate(divide="ignore"):
        lg = np.log(np.abs(pts[i] - pts))
    last = len(h) - 1
    total = 0.0
    for k, hk in enumerate(h):
        if k in (i - 1, i):
            j = k if k == i - 1 else k + 1
            fi, fj = f[i], f[j]
            total += fi * (hk * math.log(hk) - hk) + (fj - fi) / hk * (
                0.5 * hk * hk * math.log(hk) - 0.25 * hk * hk)
        elif k == 0:
            total += 2.0 / 3.0 * hk * f[1] * lg[1]
        elif k == last:
            total += 2.0 / 3.0 * hk * f[k] * lg[k]
        else:
            total += 0.5 * hk * (f[k] * lg[k] + f[k + 1] * lg[k + 1])
    return float(-total)


def first_kind_equilibrium_residuals(c1: float, c2: float, n: int = 31, M: int = 96,
                                     step: float = 0.01) -> PotentialReport:
    """Flatness of ``W1`` on ``[e1, e2]`` and ``W2`` on the S-curve.

    ``W1 = 2 P_lambda - P_mu - ln(c1) x`` and
    ``W2 = 2 P_mu - P_lambda - ln(c2/c1) Re z``.
    """
    p = ParamsFirst(1.0, c1, c2)
    lam = density_lambda(p, "first", M)
    g = trace_gamma(c1, c2, step)
    bs = branch_points(p, "first")
    ts = _zone(bs.e1, bs.e2, n)
    w1 = np.array([2 * log_potential(lam, t) - gamma_potential(g, t) - math.log(c1) * t
                   for t in ts])
    s = g.arclength
    L = s[-1]
    idx = [i for i in range(1, len(s) - 1)
           if EDGE_EXCLUSION * L <= s[i] <= (1 - EDGE_EXCLUSION) * L]
    idx = idx[:: max(1, len(idx) // n)]
    zs = g.points[idx]
    w2 = np.array([2 * gamma_potential_on_curve(g, i) - log_potential(lam, g.points[i])
                   - math.log(c2 / c1) * g.points[i].real for i in idx])
    k1, k2 = float(w1.mean()), float(w2.mean())
    d1 = float(np.max(np.abs(w1 - k1)))
    d2 = float(np.max(np.abs(w2 - k2)))
    return PotentialReport(
        np.concatenate([ts, zs]), np.concatenate([w1, w2]), max(d1, d2), k1,
        {"kappa1": k1, "kappa2": k2, "w1_deviation": d1, "w2_deviation": d2,
         "mass_lambda": lam.mass, "mass_mu": g.mass},
    )


def second_kind_equilibrium_residuals(c: float, n: int = 31, M: int = 96) -> PotentialReport:
    """Flatness of ``W1 = 2 P_lambda - P_mu - ln(c) x`` on ``[e1, e2]`` and of
    ``W2 = 2 P_mu - P_lambda`` on a window of ``(-inf, e-]``.

    Also reports the largest ``W1 - kappa1`` inside the saturated interval
    (expected negative) and the smallest value beyond ``e2`` (expected positive).
    """
    p = ParamsSecond(1.5, 1.0 + 1 / math.pi, c)
    lam = density_lambda(p, "second", M)
    mu = density_mu_second(p, M)
    bs = branch_points(p, "second")
    em = bs.e_minus

    def W1(t):
        return 2 * log_potential(lam, t) - log_potential(mu, t) - math.log(c) * t

    def W2(t):
        return 2 * log_potential(mu, t) - log_potential(lam, t)

    ts = _zone(bs.e1, bs.e2, n)
    w1 = np.array([W1(t) for t in ts])
    span = 10 * max(1.0, abs(em))
    xs = _zone(em - span, em, n)
    w2 = np.array([W2(x) for x in xs])
    k1, k2 = float(w1.mean()), float(w2.mean())
    sat = _zone(0.0, bs.e1, 7)
    free = bs.e2 + np.linspace(0.05, 1.0, 5) * bs.e2
    sat_margin = max(W1(t) - k1 for t in sat)
    free_margin = min(W1(t) - k1 for t in free)
    d1 = float(np.max(np.abs(w1 - k1)))
    d2 = float(np.max(np.abs(w2 - k2)))
    return PotentialReport(
        np.concatenate([ts, xs]), np.concatenate([w1, w2]), max(d1, d2), k1,
        {"kappa1": k1, "kappa2": k2, "w1_deviation": d1, "w2_deviation": d2,
         "mass_lambda": lam.mass, "mass_mu": mu.mass,
         "saturation_margin": float(sat_margin), "free_margin": float(free_margin)},
    )
