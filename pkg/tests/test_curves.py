import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from multimeixner.curves import (
    SingularInput,
    branch_phi0,
    branch_points,
    classical_E,
    classical_branch_points,
    cubic_coeffs_second,
    cubic_first,
    cubic_second,
    density_lambda,
    density_mu_second,
    first_kind_rational_residual,
    phi0_on_axis,
    trace_gamma,
)
from multimeixner.params import ParamsClassical, ParamsFirst, ParamsSecond

P_FIRST = ParamsFirst(1.0, 0.5, 0.25)
P_SECOND = ParamsSecond(1.2, 1.9, 0.5)

cvals = st.floats(0.05, 0.9)
zs = st.complex_numbers(min_magnitude=0.05, max_magnitude=50, allow_nan=False, allow_infinity=False)


# classical ------------------------------------------------------------------

def test_classical_principal_at_infinity():
    E, _ = classical_E(1e8, 0.25)
    assert abs(E - (1 + 1e-8)) < 1e-12


@given(zs, cvals)
def test_classical_product(z, c):
    E1, E2 = classical_E(z, c)
    assert abs(E1 * E2 - 1 / c) < 1e-9 * max(1, abs(E1 * E2))


def test_classical_root_type_inside_support():
    # e2 = 3, so z = 2 lies on the cut and the roots are a conjugate pair
    E1, E2 = classical_E(2.0, 0.25)
    assert abs(E1.imag) > 1e-3 and abs(E1 - E2.conjugate()) < 1e-12
    E1, E2 = classical_E(4.0, 0.25)
    assert abs(E1.imag) < 1e-12 and abs(E2.imag) < 1e-12


def test_classical_branch_points():
    e1, e2 = classical_branch_points(0.25)
    assert e1 == pytest.approx(1 / 3, abs=1e-15) and e2 == pytest.approx(3.0, abs=1e-14)
    e1, e2 = classical_branch_points(1e-14)
    assert e1 == pytest.approx(1, abs=1e-6) and e2 == pytest.approx(1, abs=1e-6)


@given(st.floats(0.01, 0.99))
def test_classical_branch_product_is_one(c):
    e1, e2 = classical_branch_points(c)
    assert e1 * e2 == pytest.approx(1.0, rel=1e-14)


def test_classical_z_zero_rejected():
    with pytest.raises(SingularInput):
        classical_E(0, 0.5)


# cubics ---------------------------------------------------------------------

def test_cubic_first_at_infinity():
    r = np.sort_complex(cubic_first(1e8, 0.5, 0.25).roots)
    np.testing.assert_allclose(r, [1, 2, 4], atol=1e-6)


@given(zs, st.floats(0.05, 0.45), st.floats(0.55, 0.9))
def test_cubic_first_vieta_and_residual(z, c1, c2):
    cr = cubic_first(z, c1, c2)
    prod = np.prod(cr.roots)
    assert abs(prod - 1 / (c1 * c2)) < 1e-10 * max(1, abs(prod))
    assert np.max(first_kind_rational_residual(cr.roots, z, c1, c2)) < 1e-9 * max(1, abs(z))


def test_cubic_first_vieta_grid():
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 100, endpoint=False)) * np.linspace(0.1, 10, 100)
    for zi in z:
        assert abs(np.prod(cubic_first(zi, 0.5, 0.25).roots) - 8) < 1e-10 * 8


def test_saturation_branch_is_negative_real():
    e1 = branch_points(P_FIRST).e1
    x = np.linspace(0.05, 0.95, 7) * e1
    phi, roots, _ = phi0_on_axis("first", P_FIRST, x)
    assert np.all(np.abs(phi.imag) < 1e-12) and np.all(phi.real < 0)


def test_cubic_second_at_infinity():
    r = np.sort_complex(cubic_second(1e8, 0.5).roots)
    np.testing.assert_allclose(r, [1, 2, 2], atol=1e-6)


def test_cubic_second_behaviour_at_million():
    r = np.sort_complex(cubic_second(1e6, 0.5).roots)
    assert np.max(np.abs(r - [1, 2, 2])) <= 1e-4


@given(zs, cvals)
def test_cubic_second_vieta(z, c):
    prod = np.prod(cubic_second(z, c).roots)
    assert abs(prod - 1 / c ** 2) < 1e-10 * max(1, abs(prod))


def test_cubic_second_sum_at_two():
    x, sigma = 2.0, 2.0
    quoted = ((2 * x * x - 2 * x - 1) * sigma + (x + 1) ** 2) / x ** 2
    assert abs(np.sum(cubic_second(2.0, 0.5).roots) - quoted) < 1e-12
    assert quoted == 3.75


def test_cubic_array_input():
    z = np.array([1.0 + 1j, 2.0, -3.0])
    assert cubic_second(z, 0.5).roots.shape == (3, 3)
    with pytest.raises(SingularInput):
        cubic_second(np.array([1.0, 0.0]), 0.5)


def test_cubic_coefficient_shape():
    assert len(cubic_coeffs_second(2.0, 2.0)) == 4


# branch selection -----------------------------------------------------------

@pytest.mark.parametrize("p", [P_FIRST, P_SECOND])
def test_phi0_at_infinity(p):
    assert abs(branch_phi0(1e8, p) - (1 + 2e-8)) < 1e-12


@pytest.mark.parametrize("z", [3 + 2j, -1 + 0.5j, 0.5 + 4j, 20 - 1j])
@pytest.mark.parametrize("p", [P_FIRST, P_SECOND])
def test_phi0_conjugation(p, z):
    a, b = branch_phi0(z, p), branch_phi0(z.conjugate(), p)
    assert abs(a - b.conjugate()) < 1e-10


def test_phi0_second_kind_direct_solve():
    v = branch_phi0(-1.0, P_SECOND)
    roots = cubic_second(-1.0, 0.5).roots
    nearest = roots[np.argmin(np.abs(roots - v))]
    assert abs(v - nearest) < 1e-12
    # the continued value is the real root; the others form a conjugate pair
    assert abs(v.imag) < 1e-12 and abs(v - 0.4125989480318005) < 1e-10


def test_branch_points_shapes():
    bs = branch_points(ParamsClassical(1.0, 0.25))
    np.testing.assert_allclose(bs.real_points, [1 / 3, 3])
    bs = branch_points(P_SECOND)
    assert bs.real_points.size == 3 and bs.complex_pair is None
    assert bs.e_minus < 0 < bs.e1 < bs.e2
    bs = branch_points(P_FIRST)
    assert bs.real_points.size == 2 and bs.complex_pair is not None
    e, ebar = bs.complex_pair
    assert abs(e - ebar.conjugate()) < 1e-12 and 0 < bs.e1 < bs.e2


def test_branch_points_regime_A():
    bs = branch_points(ParamsFirst(1.0, 0.9, 0.05))
    assert bs.real_points.size == 4 and bs.complex_pair is None


# densities ------------------------------------------------------------------

@pytest.fixture(scope="module")
def lam_first():
    return density_lambda(P_FIRST)


@pytest.fixture(scope="module")
def lam_second():
    return density_lambda(P_SECOND)


@pytest.fixture(scope="module")
def mu_second():
    return density_mu_second(0.5)


@pytest.mark.parametrize("which", ["lam_first", "lam_second"])
def test_lambda_invariants(which, request):
    d = request.getfixturevalue(which)
    p = P_FIRST if which == "lam_first" else P_SECOND
    bs = branch_points(p)
    assert abs(d.mass - 2) < 1e-6
    assert np.all(d.values >= 0) and np.all(d.values <= 1 + 1e-8)
    x = np.linspace(0.02, 0.98, 25) * bs.e1
    assert np.max(np.abs(d.density(x) - 1)) < 1e-8
    assert np.max(np.abs(d.density(bs.e2 * np.array([1.01, 1.5, 3.0])))) < 1e-10
    assert d.support[1] == pytest.approx(bs.e2, abs=1e-12)


def test_classical_density():
    d = density_lambda(ParamsClassical(1.0, 0.25))
    assert abs(d.mass - 1) < 1e-6 and d.support == (0.0, pytest.approx(3.0))
    # direct quadratic branch on the band (1/3, 3): |arg E| / pi
    x = np.linspace(0.4, 2.9, 9)
    ref = [abs(np.angle(classical_E(xi + 1e-13j, 0.25)[0])) / math.pi for xi in x]
    np.testing.assert_allclose(d.density(x), ref, atol=1e-6)


def test_first_kind_symmetry(lam_first):
    other = density_lambda(P_FIRST.swapped())
    x = np.linspace(0.0, 1.05, 301) * branch_points(P_FIRST).e2
    assert np.max(np.abs(lam_first.density(x) - other.density(x))) < 1e-9


def test_density_independent_of_beta(lam_first):
    other = density_lambda(ParamsFirst(3.7, 0.5, 0.25))
    np.testing.assert_array_equal(lam_first.values, other.values)


def test_mu_mass_and_bounds(mu_second):
    assert abs(mu_second.mass - 1) < 1e-5
    assert np.all(mu_second.values >= 0) and np.all(mu_second.values <= 1 + 1e-8)


def test_mu_saturated_between_e_minus_and_zero(mu_second):
    em = branch_points(P_SECOND).e_minus
    x = np.linspace(0.02, 0.98, 11) * em
    assert np.max(np.abs(mu_second.density(x) - 1)) < 1e-8


def test_mu_square_root_edge(mu_second):
    # below e- the density leaves 1 like a square root
    em = branch_points(P_SECOND).e_minus
    d = np.array([1e-3, 1e-4, 1e-5])
    gap = 1 - mu_second.density(em - d)
    slopes = np.diff(np.log(gap)) / np.diff(np.log(d))
    np.testing.assert_allclose(slopes, 0.5, atol=0.01)


@pytest.mark.xfail(strict=True, reason="mu has density 1 on [e-, 0], so it does not vanish at e-")
def test_mu_vanishes_at_e_minus_literal(mu_second):
    em = branch_points(P_SECOND).e_minus
    assert mu_second.density(np.array([em + 1e-4]))[0] < 1e-2


# S-curve --------------------------------------------------------------------

@pytest.fixture(scope="module")
def gamma():
    return trace_gamma(0.5, 0.25)


def test_gamma_endpoints(gamma):
    e, ebar = branch_points(P_FIRST).complex_pair
    assert abs(gamma.points[0] - e) < 1e-6 and abs(gamma.points[-1] - ebar) < 1e-6


def test_gamma_conjugate_symmetry(gamma):
    a = np.sort_complex(gamma.points)
    b = np.sort_complex(np.conj(gamma.points))
    assert np.max(np.abs(a - b)) < 1e-8


def test_gamma_avoids_positive_axis(gamma):
    assert gamma.min_distance_to_positive_axis() > 0.1
    assert abs(gamma.mass - 1) < 1e-3


def test_gamma_critical_passes_origin():
    assert trace_gamma(0.5, 0.146446).min_distance_to(0) < 1e-2
