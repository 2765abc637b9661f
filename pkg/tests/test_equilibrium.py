import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from multimeixner.curves import DensityGrid, branch_phi0, classical_E, density_lambda
from multimeixner.equilibrium import (
    PotentialReport,
    QuadratureError,
    cauchy_transform,
    circle_points,
    classical_equilibrium,
    first_kind_equilibrium_residuals,
    log_potential,
    second_kind_equilibrium_residuals,
    verify_h_equals_ln_phi,
)
from multimeixner.params import ParamsClassical, ParamsFirst, ParamsSecond

UNIT = DensityGrid.uniform(0.0, 1.0)


def test_uniform_potential_closed_form():
    assert log_potential(UNIT, 2.0) == pytest.approx(1 - 2 * math.log(2), abs=1e-12)


@given(st.floats(-2.0, 3.0))
def test_uniform_potential_anywhere(t):
    # -int_0^1 ln|t-x| dx in closed form, including t inside the support
    def F(u):
        return u * math.log(abs(u)) - u if u != 0 else 0.0
    ref = -(F(t) - F(t - 1))
    assert log_potential(UNIT, t) == pytest.approx(ref, abs=1e-10)


def test_potential_linear_in_mass():
    double = DensityGrid.uniform(0.0, 1.0, height=2.0)
    assert double.mass == pytest.approx(2.0)
    for t in (0.3, 2.0, -1 + 1j):
        assert log_potential(double, t) == pytest.approx(2 * log_potential(UNIT, t), rel=1e-12)


def test_potential_at_large_t():
    lam = density_lambda(ParamsFirst(1.0, 0.5, 0.25))
    t = 1e7
    assert log_potential(lam, t) + 2 * math.log(t) == pytest.approx(0, abs=1e-5)


def test_cauchy_far_field():
    lam = density_lambda(ParamsSecond(1.2, 1.9, 0.5))
    assert abs(cauchy_transform(lam, 1e6) - 2e-6) < 1e-10


@pytest.mark.parametrize("z", [2 + 1j, -3 - 0.5j, 0.4 + 0.01j])
def test_cauchy_conjugation(z):
    lam = density_lambda(ParamsFirst(1.0, 0.5, 0.25))
    a, b = cauchy_transform(lam, z), cauchy_transform(lam, z.conjugate())
    assert abs(a - b.conjugate()) < 1e-13


def test_cauchy_too_close():
    with pytest.raises(QuadratureError):
        cauchy_transform(UNIT, 0.5 + 1e-9j)


def test_classical_cauchy_matches_log_E():
    d = density_lambda(ParamsClassical(1.0, 0.25))
    ref = np.log(classical_E(5.0, 0.25)[0])
    assert abs(cauchy_transform(d, 5.0) - ref) <= 5e-4


@pytest.mark.parametrize("p", [ParamsClassical(1.0, 0.5), ParamsSecond(1.2, 1.9, 0.5),
                               ParamsFirst(1.0, 0.5, 0.25)])
def test_h_equals_log_phi_on_circle(p):
    rep = verify_h_equals_ln_phi(p)
    assert isinstance(rep, PotentialReport)
    assert rep.test_points.size == 20 and np.all(np.abs(rep.test_points.imag) > 0)
    assert 0 <= rep.max_residual <= 5e-4


def test_h_residual_decreases_with_grid():
    p = ParamsFirst(1.0, 0.5, 0.25)
    pts = circle_points(1.5, 8)
    coarse = verify_h_equals_ln_phi(p, points=pts, M=12).max_residual
    fine = verify_h_equals_ln_phi(p, points=pts, M=24).max_residual
    assert fine <= max(coarse / 2, 1e-6)


def test_mass_stable_under_refinement():
    p = ParamsFirst(1.0, 0.5, 0.25)
    assert abs(density_lambda(p, M=48).mass - density_lambda(p, M=96).mass) <= 1e-7


@pytest.mark.parametrize("c", [0.25, 0.5, 0.75])
def test_classical_flat(c):
    rep = classical_equilibrium(c)
    assert rep.max_residual <= 1e-3
    assert rep.kappa_estimate == pytest.approx(2 + 2 * math.log((1 - c) / math.sqrt(c)), abs=1e-3)


def test_classical_closed_form_reported():
    assert classical_equilibrium(0.25).extra["kappa_closed_form"] == pytest.approx(1 + math.log(3))
    assert classical_equilibrium(0.5).extra["kappa_closed_form"] == pytest.approx(1.0)


@pytest.mark.xfail(strict=True, reason="the mean of 2P+V is not 1 + ln((1-c)/c)")
@pytest.mark.parametrize("c", [0.25, 0.5])
def test_classical_published_constant(c):
    assert classical_equilibrium(c).extra["kappa_error"] <= 1e-3


@pytest.mark.xfail(strict=True, reason="P + V is not flat on the band")
def test_classical_unit_weight_not_flat():
    assert classical_equilibrium(0.25, potential_weight=1.0).max_residual <= 1e-3


@pytest.fixture(scope="module")
def first_report():
    return first_kind_equilibrium_residuals(0.5, 0.25)


def test_first_kind_mu_mass(first_report):
    assert abs(first_report.extra["mass_mu"] - 1) <= 1e-3
    assert abs(first_report.extra["mass_lambda"] - 2) <= 1e-6


def test_first_kind_flatness(first_report):
    assert first_report.extra["w1_deviation"] <= 5e-3
    assert first_report.extra["w2_deviation"] <= 5e-3


@pytest.fixture(scope="module")
def second_report():
    return second_kind_equilibrium_residuals(0.5)


def test_second_kind_masses(second_report):
    assert abs(second_report.extra["mass_lambda"] - 2) <= 1e-5
    assert abs(second_report.extra["mass_mu"] - 1) <= 1e-5


def test_second_kind_flatness(second_report):
    assert second_report.extra["w1_deviation"] <= 5e-3
    assert second_report.extra["w2_deviation"] <= 5e-3


def test_second_kind_inequalities(second_report):
    assert second_report.extra["saturation_margin"] < -1e-4
    assert second_report.extra["free_margin"] > 0
