"""Parameter types and closed-form recurrence coefficients.

Three families live here:

* first kind: weights ``(beta)_k c_i^k / k!`` with a common ``beta`` and two
  distinct ``c1, c2``;
* second kind: weights ``(beta_i)_k c^k / k!`` with a common ``c`` and two
  ``beta1, beta2`` whose difference is not an integer;
* classical Meixner (a single weight), used as the scalar reference case.

The four-term recurrence for the type II polynomials with two weights is

    x M_{n1,n2} = M_{n1+1,n2} + b M_{n1,n2} + c M_{n1,n2-1} + d M_{n1-1,n2-1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple, Union

# below this separation c1, c2 are treated as coincident (normality lost)
C_SEPARATION = 1e-8
INTEGER_TOL = 1e-12


class ParameterError(ValueError):
    """Raised for parameter values outside the admissible domain."""


def a_of(c: float) -> float:
    """Map ``c in (0, 1)`` to ``a = c / (1 - c)``."""
    if not (0.0 < c < 1.0) or not math.isfinite(c):
        raise ParameterError(f"c must lie in (0, 1), got {c!r}")
    return c / (1.0 - c)


def _check_c(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or not math.isfinite(value) or not 0.0 < value < 1.0:
        raise ParameterError(f"{name} must lie in (0, 1), got {value!r}")


def _check_positive(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0.0:
        raise ParameterError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ParamsFirst:
    beta: float
    c1: float
    c2: float

    def __post_init__(self):
        _check_positive("beta", self.beta)
        _check_c("c1", self.c1)
        _check_c("c2", self.c2)
        if abs(self.c1 - self.c2) < C_SEPARATION:
            raise ParameterError("c1 and c2 must be distinct")

    @property
    def a1(self) -> float:
        return self.c1 / (1.0 - self.c1)

    @property
    def a2(self) -> float:
        return self.c2 / (1.0 - self.c2)

    @property
    def sigma1(self) -> float:
        return 1.0 / self.c1

    @property
    def sigma2(self) -> float:
        return 1.0 / self.c2

    def swapped(self) -> "ParamsFirst":
        return ParamsFirst(self.beta, self.c2, self.c1)


@dataclass(frozen=True)
class ParamsSecond:
    beta1: float
    beta2: float
    c: float

    def __post_init__(self):
        _check_positive("beta1", self.beta1)
        _check_positive("beta2", self.beta2)
        _check_c("c", self.c)
        diff = self.beta1 - self.beta2
        if abs(diff - round(diff)) < INTEGER_TOL:
            raise ParameterError(f"beta1 - beta2 must not be an integer, got {diff!r}")

    @property
    def a(self) -> float:
        return self.c / (1.0 - self.c)

    @property
    def sigma(self) -> float:
        return 1.0 / self.c

    def swapped(self) -> "ParamsSecond":
        return ParamsSecond(self.beta2, self.beta1, self.c)


@dataclass(frozen=True)
class ParamsClassical:
    beta: float
    c: float

    def __post_init__(self):
        _check_positive("beta", self.beta)
        _check_c("c", self.c)

    @property
    def a(self) -> float:
        return self.c / (1.0 - self.c)


Params = Union[ParamsFirst, ParamsSecond, ParamsClassical]


def kind_of(params: Params) -> str:
    if isinstance(params, ParamsFirst):
        return "first"
    if isinstance(params, ParamsSecond):
        return "second"
    if isinstance(params, ParamsClassical):
        return "classical"
    raise TypeError(f"not a parameter object: {params!r}")


class MultiIndex(NamedTuple):
    n1: int
    n2: int


class RecCoeffs(NamedTuple):
    b: float
    c: float
    d: float


def _index(idx) -> Tuple[int, int]:
    n1, n2 = idx
    if int(n1) != n1 or int(n2) != n2 or n1 < 0 or n2 < 0:
        raise ValueError(f"multi-index must be nonnegative integers, got {idx!r}")
    return int(n1), int(n2)


def _first(n1: int, n2: int, beta: float, a1: float, a2: float) -> RecCoeffs:
    m = n1 + n2
    b = n1 * (2 * a1 + 1) + n2 * (a1 + a2 + 1) + a1 * beta
    c = (n1 * (a1 * a1 + a1) + n2 * (a2 * a2 + a2)) * (m + beta - 1)
    d = (beta + m - 1) * (beta + m - 2) * (a1 + 1) * (a1 - a2) * a1 * n1
    return RecCoeffs(b, c, d)


def _second(n1: int, n2: int, beta1: float, beta2: float, a: float) -> RecCoeffs:
    b = n1 * (2 * a + 1) + n2 * (a + 1) + a * beta1
    c = a * (a + 1) * (n1 * n2 + n1 * (n1 + beta1 - 1) + n2 * (n2 + beta2 - 1))
    d = a * a * (a + 1) * n1 * (n1 + beta1 - 1) * (n1 + beta1 - beta2)
    return RecCoeffs(b, c, d)


def rec_coeffs_first(idx, p: ParamsFirst) -> RecCoeffs:
    n1, n2 = _index(idx)
    return _first(n1, n2, p.beta, p.a1, p.a2)


def rec_coeffs_first_swapped(idx, p: ParamsFirst) -> RecCoeffs:
    """Coefficients with the roles of ``c1`` and ``c2`` exchanged."""
    n1, n2 = _index(idx)
    return _first(n1, n2, p.beta, p.a2, p.a1)


def rec_coeffs_second(idx, p: ParamsSecond) -> RecCoeffs:
    n1, n2 = _index(idx)
    return _second(n1, n2, p.beta1, p.beta2, p.a)


def rec_coeffs_second_swapped(idx, p: ParamsSecond) -> RecCoeffs:
    """Coefficients with the roles of ``beta1`` and ``beta2`` exchanged."""
    n1, n2 = _index(idx)
    return _second(n1, n2, p.beta2, p.beta1, p.a)


def rec_coeffs_classical(n: int, p: ParamsClassical) -> RecCoeffs:
    """Monic classical Meixner: ``x M_n = M_{n+1} + b_n M_n + c_n M_{n-1}``."""
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    a = p.a
    b = n * (2 * a + 1) + a * p.beta
    c = n * (n + p.beta - 1) * a * (a + 1)
    return RecCoeffs(b, c, 0.0)
