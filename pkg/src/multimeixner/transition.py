"""Limiting transition matrices of the stepline recurrence and nth-root asymptotics.

With ``t = x/n`` the normalized vectors ``M_k/k!`` along the stepline obey a
recurrence whose matrices converge as ``n -> oo``.  Their eigenvalues give the
main term of ``(1/n) ln|M_{n,n}(x)/(2n)!|``; rational uniformizations of the
eigenvalue curve give that term in closed form.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .params import (
    Params,
    ParamsFirst,
    ParamsSecond,
    kind_of,
    rec_coeffs_first,
    rec_coeffs_first_swapped,
    rec_coeffs_second,
    rec_coeffs_second_swapped,
)
from .polyeval import build_stepline, eval_scaled_many

_SHIFT = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


class BranchWarning(UserWarning):
    """The dominant eigenvalue is nearly degenerate along an integration path."""


def _companion(first_row) -> np.ndarray:
    m = np.zeros((3, 3), dtype=complex)
    m[0] = first_row
    m[1:] = _SHIFT
    return m


def A1_second(t: complex, a: float) -> np.ndarray:
    return _companion([t / 2 - 1.5 * a - 1, -0.75 * a * (a + 1), -a * a * (a + 1) / 8])


def charpoly_second(t: complex, a: float) -> np.ndarray:
    """Coefficients (highest first) of the cubic in ``L`` exactly as printed.

    This omits the ``+L^2`` contributed by the ``-1`` in the corner entry of
    :func:`A1_second`; use :func:`charpoly_matrix` for the true polynomial.
    """
    return np.array([1.0, -t / 2 + 1.5 * a, 0.75 * a * a + 0.75 * a, (a ** 3 + a * a) / 8],
                    dtype=complex)


def charpoly_matrix(m: np.ndarray) -> np.ndarray:
    """``det(L I - m)`` for a 3x3 matrix, highest degree first."""
    m = np.asarray(m, dtype=complex)
    tr = np.trace(m)
    minors = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
              + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    return np.array([1.0, -tr, minors, -np.linalg.det(m)], dtype=complex)


def _first_factor(t, a1, a2):
    return _companion([
        t / 2 - 1.5 * a1 - 0.5 * a2 - 1,
        -0.5 * a1 * (a1 + 1) - 0.5 * a2 * (a2 + 1),
        -0.5 * a1 * (a1 + 1) * (a1 - a2),
    ])


def A_first_factors(t: complex, a1: float, a2: float) -> Tuple[np.ndarray, np.ndarray]:
    """The two limiting half-step matrices ``(A1, A2)``; ``A2`` swaps ``a1, a2``."""
    return _first_factor(t, a1, a2), _first_factor(t, a2, a1)


def A_first(t: complex, a1: float, a2: float) -> np.ndarray:
    A1, A2 = A_first_factors(t, a1, a2)
    return A2 @ A1


@dataclass(frozen=True)
class EigenTriple:
    L1: complex
    L2: complex
    L3: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.L1, self.L2, self.L3])


def _order(vals) -> EigenTriple:
    v = sorted((complex(x) for x in vals), key=lambda z: (-abs(z), -z.real, -z.imag))
    return EigenTriple(*v)


def eigen_ordered(m: np.ndarray) -> EigenTriple:
    """Eigenvalues by nonincreasing modulus, then real part, then imaginary part."""
    return _order(np.linalg.eigvals(np.asarray(m, dtype=complex)))


@dataclass(frozen=True)
class UniformizationPoint:
    parameter: complex
    t_value: complex
    L_value: complex


def _b_of(c: float) -> float:
    return 1.0 / math.sqrt(1.0 - c)


def _c_of(params) -> float:
    return params.c if isinstance(params, ParamsSecond) else float(params)


def t_of_L_second(L: complex, c: float) -> complex:
    b = _b_of(c)
    b2 = b * b
    if L == 0:
        raise ZeroDivisionError("t(L) has a pole at L = 0")
    return (2 * L + b + b2) * (2 * L - b + b2) * (2 * L - 1 + b2) / (4 * L * L)


def uniformize_second(L: complex, c) -> UniformizationPoint:
    L = complex(L)
    return UniformizationPoint(L, t_of_L_second(L, _c_of(c)), L)


def _phi_second(L, c):
    b = _b_of(c)
    b2 = b * b
    return (2 * L + b + b2) * (2 * L - b + b2) / (2 * L - 1 + b2) ** 2


def F_second(L: complex, c) -> complex:
    """Closed form of ``(2/n) int_0^n ln L_1 dn`` in the parameter ``L``."""
    c = _c_of(c)
    L = complex(L)
    return 2 * cmath.log(L) + t_of_L_second(L, c) * cmath.log(_phi_second(L, c))


def phi_second_of_L(L: complex, c) -> complex:
    """``exp(dF/dt)`` in closed form."""
    return complex(_phi_second(complex(L), _c_of(c)))


def _first_consts(c1: float, c2: float):
    a1, a2 = c1 / (1 - c1), c2 / (1 - c2)
    K = a1 * (a1 + 1) + a2 * (a2 + 1)
    p = a2 * (a2 + 1) * (a1 - a2)
    q = a1 * (a1 + 1) * (a1 - a2)
    u = a1 * a1 * (a1 + 1) + a2 * a2 * (a2 + 1)
    v = a1 * (a1 + 1) ** 2 + a2 * (a2 + 1) ** 2
    w = (a1 + a2 + 1) * (a1 - a2) ** 2
    return a1, a2, K, p, q, u, v, w


def _unpack_first(c1, c2):
    if isinstance(c1, ParamsFirst):
        return c1.c1, c1.c2
    return float(c1), float(c2)


def uniformize_first(s: complex, c1, c2=None) -> UniformizationPoint:
    c1, c2 = _unpack_first(c1, c2)
    _, _, K, p, q, u, v, w = _first_consts(c1, c2)
    s = complex(s)
    den = K * (s + q) * (s - p)
    if den == 0:
        raise ZeroDivisionError("t(s) has a pole here")
    L = (s - p) * (s + q) / (K * K)
    t = (s + u) * (s + v) * (2 * s + w) / den
    return UniformizationPoint(s, t, L)


def ratio_first(s: complex, c1, c2=None) -> complex:
    c1, c2 = _unpack_first(c1, c2)
    _, _, _, _, _, u, v, _ = _first_consts(c1, c2)
    return (complex(s) + u) / (complex(s) + v)


def F_first(s: complex, c1, c2=None) -> complex:
    """Closed form of ``(1/n) int_0^n ln L_1 dn`` in the parameter ``s``.

    The coefficient of ``t ln r(s)`` is ``-1``: with it ``dF/dt = -ln r(s)``
    and ``1/r(s)`` solves the spectral cubic.
    """
    pt = uniformize_first(s, c1, c2)
    return cmath.log(pt.L_value) - pt.t_value * cmath.log(ratio_first(s, c1, c2))


def phi_first_of_s(s: complex, c1, c2=None) -> complex:
    return 1.0 / ratio_first(s, c1, c2)


def dF_dt(kind: str, param: complex, params: Params, h: float = 1e-5) -> complex:
    """``dF/dt`` along the uniformization by a central difference in the parameter."""
    param = complex(param)
    step = h * max(1.0, abs(param))
    if kind == "second":
        F = lambda q: F_second(q, params)
        T = lambda q: t_of_L_second(q, _c_of(params))
    elif kind == "first":
        F = lambda q: F_first(q, params)
        T = lambda q: uniformize_first(q, params).t_value
    else:
        raise ValueError(f"no uniformization for kind {kind!r}")
    num = F(param + step) - F(param - step)
    den = T(param + step) - T(param - step)
    # the logs in F are continuous along a short segment unless a cut is crossed
    num = complex(num.real, (num.imag + math.pi) % (2 * math.pi) - math.pi)
    return num / den


def dominant_eigenvalue(t: complex, params: Params, kind=None) -> EigenTriple:
    kind = kind or kind_of(params)
    if kind == "second":
        return eigen_ordered(A1_second(t, params.a))
    if kind == "first":
        return eigen_ordered(A_first(t, params.a1, params.a2))
    raise ValueError(f"no transition matrix for kind {kind!r}")


def uniformization_at(t: complex, params: Params, kind=None) -> UniformizationPoint:
    """Uniformization point over ``t`` on the sheet of the dominant eigenvalue."""
    kind = kind or kind_of(params)
    L1 = dominant_eigenvalue(t, params, kind).L1
    if kind == "second":
        return uniformize_second(L1, params)
    _, _, K, p, q, _, _, _ = _first_consts(params.c1, params.c2)
    # L(s) = L1 is quadratic in s; keep the root whose t(s) reproduces t
    roots = np.roots([1.0, q - p, -p * q - K * K * L1])
    pts = [uniformize_first(r, params) for r in roots]
    return min(pts, key=lambda u: abs(u.t_value - t))


def F_at(t: complex, params: Params, kind=None) -> complex:
    kind = kind or kind_of(params)
    u = uniformization_at(t, params, kind)
    return F_second(u.parameter, params) if kind == "second" else F_first(u.parameter, params)


def _doubling(kind: str) -> int:
    # for the second kind both half-step limits coincide, so one factor is squared
    return 2 if kind == "second" else 1


def main_term(x: complex, n: float, params: Params, kind=None, gap_tol: float = 1e-6) -> float:
    """``(1/n) int_0^n ln|L1(x/m)| dm`` by quadrature.

    With ``m = n v`` the integrand becomes ``ln|L1(t/v)|`` on ``(0, 1]``,
    ``t = x/n``, which only has an integrable log singularity at ``v = 0``.
    """
    kind = kind or kind_of(params)
    t = complex(x) / n
    if t == 0:
        raise ValueError("x/n must avoid the origin")
    worst = [math.inf]

    def f(v):
        e = dominant_eigenvalue(t / v, params, kind)
        worst[0] = min(worst[0], (abs(e.L1) - abs(e.L2)) / abs(e.L1))
        return math.log(abs(e.L1))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(f, 0.0, 1.0, limit=200, epsabs=1e-12, epsrel=1e-10)
    if worst[0] < gap_tol:
        warnings.warn("path passes close to the curve |L1| = |L2|; accuracy degraded",
                      BranchWarning, stacklevel=2)
    return _doubling(kind) * val


def asymptotic_discrepancy(t: float, n: int, params: Params, kind=None) -> float:
    """``|(1/n)(ln|M_{n,n}(nt)| - ln (2n)!) - main_term|``."""
    kind = kind or kind_of(params)
    seq = build_stepline(kind, params, 2 * n)
    _, la = eval_scaled_many(seq, np.array([n * t], dtype=float), 2 * n)
    lhs = (float(la[0]) - float(gammaln(2 * n + 1))) / n
    return abs(lhs - main_term(n * t, n, params, kind))


def finite_transition(kind: str, params: Params, n: int, t: complex, half: int) -> np.ndarray:
    """Half-step ``half`` (1 or 2) transition matrix at finite ``n`` with ``x = n t``.

    Acts on ``(M_k/k!, M_{k-1}/(k-1)!, M_{k-2}/(k-2)!)`` with ``k = 2n`` for the
    first half-step and ``k = 2n + 1`` for the second.
    """
    if half == 1:
        k = 2 * n
        rc = rec_coeffs_second if kind == "second" else rec_coeffs_first
        b, c, d = rc((n, n), params)
    elif half == 2:
        k = 2 * n + 1
        rc = rec_coeffs_second_swapped if kind == "second" else rec_coeffs_first_swapped
        b, c, d = rc((n, n + 1), params)
    else:
        raise ValueError("half must be 1 or 2")
    x = n * t
    return _companion([
        (x - b) / (k + 1),
        -c / ((k + 1) * k),
        -d / ((k + 1) * k * (k - 1)),
    ])


def second_kind_limits_gap(t: complex, params: ParamsSecond, n: int = 10 ** 6) -> float:
    """Largest entry difference between the two half-step matrices at large ``n``,
    and between each and :func:`A1_second`."""
    m1 = finite_transition("second", params, n, t, 1)
    m2 = finite_transition("second", params, n, t, 2)
    ref = A1_second(t, params.a)
    return float(max(np.max(np.abs(m1 - m2)), np.max(np.abs(m1 - ref)), np.max(np.abs(m2 - ref))))
