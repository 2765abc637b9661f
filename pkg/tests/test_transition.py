import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from multimeixner.curves import branch_phi0, branch_points, cubic_coeffs_first, cubic_coeffs_second
from multimeixner.params import ParamsFirst, ParamsSecond
from multimeixner.transition import (
    A1_second,
    A_first,
    A_first_factors,
    F_at,
    F_first,
    F_second,
    asymptotic_discrepancy,
    charpoly_matrix,
    charpoly_second,
    dF_dt,
    dominant_eigenvalue,
    eigen_ordered,
    main_term,
    phi_first_of_s,
    phi_second_of_L,
    second_kind_limits_gap,
    uniformization_at,
    uniformize_first,
    uniformize_second,
)

P2 = ParamsSecond(1.2, 1.9, 0.5)
P1 = ParamsFirst(1.0, 0.5, 0.25)
SHIFT = np.array([[1, 0, 0], [0, 1, 0]])


def test_A1_second_rows():
    np.testing.assert_allclose(A1_second(0, 0)[0], [-1, 0, 0])
    np.testing.assert_allclose(A1_second(3, 1)[0], [-1, -1.5, -0.25])
    np.testing.assert_array_equal(A1_second(3, 1)[1:], SHIFT)


def test_charpoly_printed_values():
    np.testing.assert_allclose(charpoly_second(2, 1), [1, 0.5, 1.5, 0.25])
    np.testing.assert_allclose(charpoly_second(5, 0), [1, -2.5, 0, 0])


@pytest.mark.parametrize("t", np.linspace(-5, 5, 10))
@pytest.mark.parametrize("a", np.linspace(0.1, 3, 10))
def test_matrix_charpoly_is_printed_plus_L_squared(t, a):
    true = charpoly_matrix(A1_second(t, a))
    printed = charpoly_second(t, a)
    np.testing.assert_allclose(true - printed, [0, 1, 0, 0], atol=1e-14 * max(1, abs(t), a ** 3))


@pytest.mark.xfail(strict=True, reason="the printed cubic lacks the +L^2 term")
def test_matrix_charpoly_equals_printed():
    np.testing.assert_allclose(charpoly_matrix(A1_second(2, 1)), charpoly_second(2, 1), atol=1e-14)


def test_eigen_identity():
    e = eigen_ordered(np.eye(3))
    np.testing.assert_allclose(e.as_array(), [1, 1, 1])


def test_eigen_large_t():
    t = 1e4
    L1 = eigen_ordered(A1_second(t, 1.0)).L1
    assert abs(L1.imag) < 1e-9 and L1.real == pytest.approx(t / 2, rel=1e-3)


@given(st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False),
       st.floats(0.05, 3.0))
def test_eigen_order_and_residual(t, a):
    m = A1_second(t, a)
    e = eigen_ordered(m).as_array()
    assert np.all(np.diff(np.abs(e)) <= 1e-12)
    cp = charpoly_matrix(m)
    scale = np.max(np.abs(cp))
    assert np.max(np.abs(np.polyval(cp, e))) <= 1e-10 * scale * max(1, np.max(np.abs(e))) ** 3


def test_A_first_factors_and_product():
    a1, a2 = P1.a1, P1.a2
    A1, A2 = A_first_factors(0.7, a1, a2)
    np.testing.assert_array_equal(A1[1:], SHIFT)
    np.testing.assert_array_equal(A2[1:], SHIFT)
    np.testing.assert_allclose(A_first(0.7, a1, a2), A2 @ A1)
    assert np.linalg.det(A1) == pytest.approx(A1[0, 2], abs=1e-14)


def test_A_first_equal_parameters_square():
    A1, A2 = A_first_factors(1.3, 0.4, 0.4)
    np.testing.assert_array_equal(A1, A2)
    np.testing.assert_allclose(A_first(1.3, 0.4, 0.4), A1 @ A1)


# second-kind uniformization --------------------------------------------------

def test_second_uniformization_large_L():
    L = 1e7
    assert uniformize_second(L, 0.5).t_value / L == pytest.approx(2.0, rel=1e-6)


def test_b_relation():
    c = 0.3
    b = 1 / math.sqrt(1 - c)
    assert b * b - 1 == pytest.approx(c / (1 - c))


def test_second_uniformization_residuals():
    rng = np.random.default_rng(1)
    for L in rng.normal(size=50) * 3 + 1j * rng.normal(size=50) * 3:
        u = uniformize_second(L, P2)
        cp = charpoly_matrix(A1_second(u.t_value, P2.a))
        assert abs(np.polyval(cp, L)) <= 1e-10 * max(1, abs(L)) ** 3 * max(1, abs(u.t_value))


@pytest.mark.parametrize("t", [-1.0, -3.0, 0.2 + 1.5j, 12.0, 25.0])
def test_second_dF_dt_is_log_phi0(t):
    u = uniformization_at(t, P2)
    d = dF_dt("second", u.parameter, P2)
    assert abs(d - cmath.log(branch_phi0(t, P2))) <= 1e-6
    phi = phi_second_of_L(u.parameter, P2)
    assert abs(np.polyval(cubic_coeffs_second(t, P2.sigma), phi)) <= 1e-8 * max(1, abs(phi)) ** 3


def test_second_F_real_beyond_support():
    t = branch_points(P2).e2 + 2
    u = uniformization_at(t, P2)
    assert abs(F_second(u.parameter, P2).imag) < 1e-12


# first-kind uniformization ---------------------------------------------------

def test_first_uniformization_residuals():
    rng = np.random.default_rng(2)
    for s in rng.normal(size=50) * 2 + 1j * rng.normal(size=50) * 2:
        u = uniformize_first(s, P1)
        cp = charpoly_matrix(A_first(u.t_value, P1.a1, P1.a2))
        scale = max(1, abs(u.L_value)) ** 3 * max(1, abs(u.t_value)) ** 2
        assert abs(np.polyval(cp, u.L_value)) <= 1e-8 * scale


def test_first_leading_terms():
    K = P1.a1 * (P1.a1 + 1) + P1.a2 * (P1.a2 + 1)
    s = 1e7
    u = uniformize_first(s, P1)
    assert u.L_value.real == pytest.approx(s * s / K ** 2, rel=1e-5)
    assert u.t_value.real == pytest.approx(2 * s / K, rel=1e-5)


@pytest.mark.parametrize("t", [-1.0, -4.0, 1.0 + 2j, 20.0, 30.0])
def test_first_dF_dt_is_log_phi0(t):
    u = uniformization_at(t, P1)
    d = dF_dt("first", u.parameter, P1)
    assert abs(d - cmath.log(branch_phi0(t, P1))) <= 1e-6
    phi = phi_first_of_s(u.parameter, P1)
    coeffs = cubic_coeffs_first(t, P1.a1, P1.a2)
    assert abs(np.polyval(coeffs, phi)) <= 1e-8 * np.max(np.abs(coeffs)) * max(1, abs(phi)) ** 3


def test_first_ratio_solves_rational_relation():
    from multimeixner.curves import first_kind_rational_residual
    for s in (0.3 + 1j, -2 + 0.5j, 4.0):
        u = uniformize_first(s, P1)
        phi = phi_first_of_s(s, P1)
        assert first_kind_rational_residual(phi, u.t_value, 0.5, 0.25) <= 1e-9 * max(1, abs(u.t_value))


# main term and asymptotics ----------------------------------------------------

@pytest.mark.parametrize("p", [P1, P2])
@pytest.mark.parametrize("t", [-1.0, -2.5])
def test_main_term_matches_closed_form(p, t):
    n = 100
    assert abs(main_term(n * t, n, p) - F_at(t, p).real) <= 1e-6


@pytest.mark.parametrize("p", [P1, P2])
def test_main_term_beyond_support(p):
    t = branch_points(p).e2 + 1
    assert abs(main_term(t * 10, 10, p) - F_at(t, p).real) <= 1e-6


def test_main_term_growth():
    # for large t, L1 ~ t/2 per half-step, so the per-n average is ln|t/2| + 1 per factor
    t = 1e4
    v = main_term(t, 1, P2)
    assert v / 2 == pytest.approx(math.log(t / 2) + 1, abs=1e-2)


def test_main_term_origin_rejected():
    with pytest.raises(ValueError):
        main_term(0.0, 10, P1)


@pytest.mark.slow
@pytest.mark.parametrize("p", [P1, P2])
@pytest.mark.parametrize("shift", [None, 1.0])
def test_discrepancy_decreases(p, shift):
    t = -1.0 if shift is None else branch_points(p).e2 + shift
    d50 = asymptotic_discrepancy(t, 50, p)
    d200 = asymptotic_discrepancy(t, 200, p)
    assert d200 <= d50 and d200 <= 0.05


def test_second_kind_half_steps_coincide():
    assert second_kind_limits_gap(-1.0, P2) < 1e-5
    assert second_kind_limits_gap(0.5 + 1j, P2) < 1e-5


def test_dominant_eigenvalue_kind_check():
    from multimeixner.params import ParamsClassical
    with pytest.raises(ValueError):
        dominant_eigenvalue(1.0, ParamsClassical(1.0, 0.5))
