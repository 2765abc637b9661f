"""Stepline polynomial sequences, overflow-safe evaluation and series oracles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import gammaln

from .params import (
    Params,
    ParamsClassical,
    ParamsFirst,
    ParamsSecond,
    kind_of,
    rec_coeffs_classical,
    rec_coeffs_first,
    rec_coeffs_first_swapped,
    rec_coeffs_second,
    rec_coeffs_second_swapped,
)

COEFF_DEGREE_LIMIT = 64
ORACLE_DEGREE_LIMIT = 12
_RESCALE_HI = 1e100
_RESCALE_LO = 1e-100


class OracleScaleError(ValueError):
    """Series oracles are only trusted at small total degree."""


class TruncationError(RuntimeError):
    """Lattice sum truncated before its tail became negligible."""


# ---------------------------------------------------------------------------
# Pochhammer symbols


def pochhammer_falling(k: int, j: int) -> float:
    """``(-k)_j = (-k)(1-k)...(j-k-1)``; vanishes for integer ``k < j``."""
    out = 1.0
    for i in range(j):
        out *= i - k
    return out


def signed_log_poch(x: float, j: int):
    """Return ``(sign, log|.|)`` of the rising factorial ``(x)_j``."""
    sign, logabs = 1, 0.0
    for i in range(j):
        f = x + i
        if f == 0.0:
            return 0, -math.inf
        if f < 0:
            sign = -sign
        logabs += math.log(abs(f))
    return sign, logabs


def falling_x_coeffs(j: int) -> np.ndarray:
    """Ascending coefficients of ``(-x)_j = (-x)(-x+1)...(-x+j-1)``."""
    coeffs = [1]
    for i in range(j):
        # multiply by (i - x); integer arithmetic keeps this exact
        nxt = [0] * (len(coeffs) + 1)
        for m, cm in enumerate(coeffs):
            nxt[m] += i * cm
            nxt[m + 1] -= cm
        coeffs = nxt
    return np.array(coeffs, dtype=float)


# ---------------------------------------------------------------------------
# Polynomials and sequences


@dataclass(frozen=True)
class MonicPoly:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0 or c[-1] != 1.0:
            raise ValueError("MonicPoly needs a 1-d ascending coefficient vector ending in 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)


class ScaledValue(NamedTuple):
    sign: int
    log_abs: float

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs) if self.sign else 0.0


@dataclass(frozen=True)
class SteplineSequence:
    """``P_{k+1} = (x - b[k]) P_k - c[k] P_{k-1} - d[k] P_{k-2}`` for ``k < N``.

    Even ``k`` carries multi-index ``(k/2, k/2)``, odd ``k`` carries
    ``((k+1)/2, (k-1)/2)``.  For the classical kind ``k`` is the degree.
    """

    kind: str
    params: Params
    N: int
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    polys: Optional[List[MonicPoly]] = field(default=None, repr=False)

    def index(self, k: int):
        if self.kind == "classical":
            return (k, 0)
        return ((k + 1) // 2, k // 2)


def stepline_coeffs(kind: str, params: Params, N: int):
    """Recurrence coefficient arrays of length ``N`` for the stepline path."""
    b = np.zeros(N)
    c = np.zeros(N)
    d = np.zeros(N)
    for k in range(N):
        n = k // 2
        if kind == "classical":
            r = rec_coeffs_classical(k, params)
        elif kind == "first":
            # (n,n) -> (n+1,n) directly; (n+1,n) -> (n+1,n+1) with c1 <-> c2
            r = rec_coeffs_first((n, n), params) if k % 2 == 0 else rec_coeffs_first_swapped((n, n + 1), params)
        elif kind == "second":
            r = rec_coeffs_second((n, n), params) if k % 2 == 0 else rec_coeffs_second_swapped((n, n + 1), params)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        b[k], c[k], d[k] = r
    return b, c, d


def build_stepline(kind: str, params: Params, N: int) -> SteplineSequence:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if kind != kind_of(params):
        raise ValueError(f"kind {kind!r} does not match {type(params).__name__}")
    b, c, d = stepline_coeffs(kind, params, N)
    polys = None
    if N <= COEFF_DEGREE_LIMIT:
        polys = [np.array([1.0])]
        prev1 = np.zeros(1)
        prev2 = np.zeros(1)
        for k in range(N):
            cur = polys[-1]
            nxt = np.zeros(k + 2)
            nxt[1:] += cur
            nxt[: k + 1] -= b[k] * cur
            nxt[: prev1.size] -= c[k] * prev1
            nxt[: prev2.size] -= d[k] * prev2
            nxt[-1] = 1.0
            prev2, prev1 = prev1, cur
            polys.append(nxt)
        polys = [MonicPoly(p) for p in polys]
    return SteplineSequence(kind, params, N, b, c, d, polys)


def eval_scaled_many(seq: SteplineSequence, xs, degree: Optional[int] = None):
    """Evaluate ``P_degree`` at many points; returns ``(sign, log_abs)`` arrays.

    The recurrence runs on values.  The three live values share one scale
    factor that is renormalised whenever it drifts out of ``[1e-100, 1e100]``.
    """
    xs = np.asarray(xs, dtype=float)
    K = seq.N if degree is None else degree
    if K > seq.N:
        raise ValueError("degree exceeds sequence length")
    p0 = np.ones_like(xs)
    p1 = np.zeros_like(xs)
    p2 = np.zeros_like(xs)
    logscale = np.zeros_like(xs)
    for k in range(K):
        new = (xs - seq.b[k]) * p0 - seq.c[k] * p1 - seq.d[k] * p2
        p2, p1, p0 = p1, p0, new
        m = np.maximum(np.maximum(np.abs(p0), np.abs(p1)), np.abs(p2))
        bad = (m > _RESCALE_HI) | ((m < _RESCALE_LO) & (m > 0))
        if bad.any():
            s = np.where(bad, m, 1.0)
            p0 = p0 / s
            p1 = p1 / s
            p2 = p2 / s
            logscale = logscale + np.log(s)
    sign = np.sign(p0).astype(int)
    with np.errstate(divide="ignore"):
        log_abs = np.where(sign != 0, np.log(np.abs(p0)) + logscale, -np.inf)
    return sign, log_abs


def eval_scaled(seq: SteplineSequence, x: float) -> List[ScaledValue]:
    """Values ``P_k(x)`` for ``k = 0..N`` as (sign, log|value|) pairs."""
    out = [ScaledValue(1, 0.0)]
    p0, p1, p2, logscale = 1.0, 0.0, 0.0, 0.0
    for k in range(seq.N):
        new = (x - seq.b[k]) * p0 - seq.c[k] * p1 - seq.d[k] * p2
        p2, p1, p0 = p1, p0, new
        m = max(abs(p0), abs(p1), abs(p2))
        if m > _RESCALE_HI or 0 < m < _RESCALE_LO:
            p0, p1, p2 = p0 / m, p1 / m, p2 / m
            logscale += math.log(m)
        if p0 == 0.0:
            out.append(ScaledValue(0, -math.inf))
        else:
            out.append(ScaledValue(1 if p0 > 0 else -1, math.log(abs(p0)) + logscale))
    return out


# ---------------------------------------------------------------------------
# Explicit double-sum oracles


def _oracle_terms_first(idx, p: ParamsFirst):
    """Yield ``(j, sign, log|T_j|)`` with ``M = sum_j T_j (-x)_j`` (first kind)."""
    n1, n2 = idx
    if n1 + n2 > ORACLE_DEGREE_LIMIT:
        raise OracleScaleError(f"series oracle limited to n1+n2 <= {ORACLE_DEGREE_LIMIT}")
    c1, c2, beta = p.c1, p.c2, p.beta
    u1 = (c1 - 1) / c1
    u2 = (c2 - 1) / c2
    s_pre, l_pre = signed_log_poch(beta, n1 + n2)
    l_pre += n1 * (math.log(c1) - math.log(1 - c1)) + n2 * (math.log(c2) - math.log(1 - c2))
    s_pre *= (-1) ** (n1 + n2)
    for j in range(n1 + n2 + 1):
        total = 0.0
        s_bj, l_bj = signed_log_poch(beta, j)
        for k in range(j + 1):
            sa, la = signed_log_poch(-n1, k)
            sb, lb = signed_log_poch(-n2, j - k)
            if sa == 0 or sb == 0:
                continue
            sgn = sa * sb * (1 if k % 2 == 0 else -1) * (1 if (j - k) % 2 == 0 else -1)
            lg = la + lb - l_bj + k * math.log(-u1) + (j - k) * math.log(-u2)
            lg -= math.lgamma(k + 1) + math.lgamma(j - k + 1)
            total += sgn * math.exp(lg + l_pre)
        yield j, s_pre * s_bj * total


def _oracle_terms_second(idx, p: ParamsSecond):
    n1, n2 = idx
    if n1 + n2 > ORACLE_DEGREE_LIMIT:
        raise OracleScaleError(f"series oracle limited to n1+n2 <= {ORACLE_DEGREE_LIMIT}")
    c, b1, b2 = p.c, p.beta1, p.beta2
    u = (c - 1) / c
    s_pre, l_pre = 1, (n1 + n2) * (math.log(c) - math.log(1 - c))
    s_pre *= (-1) ** (n1 + n2)
    s, l = signed_log_poch(b2, n2)
    s_pre *= s
    l_pre += l
    s, l = signed_log_poch(b1, n1)
    s_pre *= s
    l_pre += l
    for j in range(n1 + n2 + 1):
        total = 0.0
        s_bj, l_bj = signed_log_poch(b1, j)
        for k in range(j + 1):
            sa, la = signed_log_poch(-n1, k)
            sb, lb = signed_log_poch(-n2, j - k)
            sc, lc = signed_log_poch(b1 + n1, j - k)
            sd, ld = signed_log_poch(b2, j - k)
            if sa == 0 or sb == 0 or sc == 0:
                continue
            sgn = sa * sb * sc * sd * (1 if j % 2 == 0 else -1)
            lg = la + lb + lc - ld - l_bj + j * math.log(-u)
            lg -= math.lgamma(k + 1) + math.lgamma(j - k + 1)
            total += sgn * math.exp(lg + l_pre)
        yield j, s_pre * s_bj * total


def _series_coeffs(terms, degree: int) -> np.ndarray:
    out = np.zeros(degree + 1)
    for j, tj in terms:
        cj = falling_x_coeffs(j)
        out[: cj.size] += tj * cj
    return out


def _series_value(terms, x: float) -> float:
    total = 0.0
    for j, tj in terms:
        total += tj * pochhammer_rising(-x, j)
    return total


def pochhammer_rising(x: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= x + i
    return out


def series_first_coeffs(idx, p: ParamsFirst) -> np.ndarray:
    """Ascending coefficients of the first-kind polynomial from its double sum."""
    n1, n2 = idx
    return _series_coeffs(_oracle_terms_first((n1, n2), p), n1 + n2)


def series_second_coeffs(idx, p: ParamsSecond) -> np.ndarray:
    n1, n2 = idx
    return _series_coeffs(_oracle_terms_second((n1, n2), p), n1 + n2)


def series_first(idx, p: ParamsFirst, x: float) -> float:
    return _series_value(_oracle_terms_first(tuple(idx), p), x)


def series_second(idx, p: ParamsSecond, x: float) -> float:
    return _series_value(_oracle_terms_second(tuple(idx), p), x)


# ---------------------------------------------------------------------------
# Weights and orthogonality


@dataclass(frozen=True)
class WeightSpec:
    kind: str
    which: int
    params: Params

    def beta_c(self):
        p = self.params
        if self.kind == "first":
            return p.beta, (p.c1 if self.which == 1 else p.c2)
        if self.kind == "second":
            return (p.beta1 if self.which == 1 else p.beta2), p.c
        if self.kind == "classical":
            return p.beta, p.c
        raise ValueError(f"unknown kind {self.kind!r}")


def log_weight(w: WeightSpec, k):
    beta, c = w.beta_c()
    k = np.asarray(k, dtype=float)
    return gammaln(beta + k) - gammaln(beta) - gammaln(k + 1) + k * math.log(c)


def weight_at(w: WeightSpec, k):
    """Lattice weight ``(beta)_k c^k / k!`` (computed through log-gamma)."""
    return np.exp(log_weight(w, k))


def defining_conditions(kind: str, idx):
    """``(which, j)`` pairs of the orthogonality conditions for a multi-index."""
    n1, n2 = idx
    if kind == "classical":
        return [(1, j) for j in range(n1 + n2)]
    return [(1, j) for j in range(n1)] + [(2, j) for j in range(n2)]


def _tail_ok(w: WeightSpec, deg: int, j: int, K: int, accumulated: float, tol: float) -> bool:
    tail = math.exp(float(log_weight(w, K))) * max(1.0, K) ** (deg + j)
    return tail < tol * accumulated


def orthogonality_residual(poly: MonicPoly, w: WeightSpec, j: int, K: Optional[int] = None) -> float:
    """Normalised ``sum_k P(k) (-k)_j w(k)`` over the lattice ``0..K``.

    With ``K=None`` the truncation grows until the tail bound drops below
    ``1e-18`` of the accumulated absolute sum.  An explicit ``K`` whose tail
    bound exceeds ``1e-15`` of that sum raises :class:`TruncationError`.
    """
    deg = poly.degree

    def sums(K):
        k = np.arange(K + 1, dtype=float)
        fall = np.ones_like(k)
        for i in range(j):
            fall *= i - k
        terms = poly(k) * fall * weight_at(w, k)
        return terms.sum(), np.abs(terms).sum()

    if K is None:
        K = 64
        while True:
            s, a = sums(K)
            if a > 0 and _tail_ok(w, deg, j, K, a, 1e-18):
                break
            K *= 2
            if K > 1 << 20:
                raise TruncationError("lattice sum did not converge")
    else:
        s, a = sums(K)
        if a == 0 or not _tail_ok(w, deg, j, K, a, 1e-15):
            raise TruncationError(f"truncation K={K} too small for the weight tail")
    return s / a
