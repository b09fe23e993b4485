import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirkit import Polynomial, hardy_inner
from dirkit.poly import MAX_DEGREE, as_disc_point, binomial, on_boundary

from helpers import disc_points, polynomials

Z = Polynomial.monomial


def test_evaluation_examples():
    assert Polynomial([1, 2])(0) == 1
    assert Z(3)(0.5) == pytest.approx(0.125)
    assert Polynomial([1, 0, 1j])(1j) == pytest.approx(1 - 1j)


def test_evaluation_on_arrays():
    f = Polynomial([1, 2, 3])
    z = np.array([0.0, 1.0, 1j])
    assert np.allclose(f(z), 1 + 2 * z + 3 * z**2)


def test_derivative_examples():
    assert Z(3).derivative() == Polynomial([0, 0, 3])
    assert Z(3).derivative(3) == Polynomial([6])
    assert Polynomial([1, 2, 0, 0, 1]).derivative(2) == Polynomial([0, 0, 12])
    f = Polynomial([1, 2])
    assert f.derivative(0) is f
    assert f.derivative(5).is_zero()
    with pytest.raises(ValueError):
        f.derivative(-1)


def test_backward_shift_examples():
    assert Polynomial([0, 2, 0, 1]).backward_shift() == Polynomial([2, 0, 1])
    assert Polynomial([7]).backward_shift().is_zero()
    assert Polynomial([0, 1, 0, 0, 0, 1]).backward_shift(3) == Z(2)


def test_difference_quotient_examples():
    assert Z(2).difference_quotient(0.5).allclose(Polynomial([0.5, 1]))
    zeta = 0.3 - 0.2j
    assert Z(3).difference_quotient(zeta).allclose(Polynomial([zeta**2, zeta, 1]))
    assert Polynomial([1, 1, 1]).difference_quotient(0) == Polynomial([1, 1])
    assert Polynomial([4]).difference_quotient(0.5).is_zero()


def test_dilation_examples():
    assert Z(2).dilate(1) == Z(2)
    assert Z(2).dilate(0.5).allclose(Polynomial([0, 0, 0.25]))
    assert Polynomial([1, 1, 0, 1]).dilate(0.1).allclose(Polynomial([1, 0.1, 0, 0.001]))
    for r in (-0.1, 1.5):
        with pytest.raises(ValueError):
            Z(1).dilate(r)


def test_hardy_inner_examples():
    assert hardy_inner(Z(2), Z(2)) == 1
    assert hardy_inner(Z(1), Z(2)) == 0
    assert hardy_inner(Polynomial([1, 2]), Polynomial([3, 1])) == 5


def test_degree_of_zero_is_none():
    assert Polynomial.zero().degree is None
    assert Polynomial([0, 0, 0]).degree is None
    assert Polynomial([1, 0, 0]).degree == 0
    assert Polynomial([1, 0, 0]).trim().length == 1


def test_degree_cap():
    Polynomial(np.ones(MAX_DEGREE + 1))
    with pytest.raises(ValueError):
        Polynomial(np.ones(MAX_DEGREE + 2))


def test_padding_refuses_truncation():
    assert np.array_equal(Polynomial([1, 2]).padded(4), [1, 2, 0, 0])
    assert np.array_equal(Polynomial([1, 2, 0]).padded(2), [1, 2])
    with pytest.raises(ValueError):
        Polynomial([1, 2, 3]).padded(2)


def test_json_round_trip():
    f = Polynomial([1 + 2j, -0.5, 3j])
    assert Polynomial.from_json(f.to_json()) == f


def test_coefficients_are_immutable():
    f = Polynomial([1, 2])
    with pytest.raises(ValueError):
        f.coeffs[0] = 5


def test_disc_point_helpers():
    assert as_disc_point(0.5) == 0.5
    assert as_disc_point(1 + 1e-13) == 1 + 1e-13
    with pytest.raises(ValueError):
        as_disc_point(1.01)
    assert on_boundary(1j) and on_boundary(cmath.exp(0.3j))
    assert not on_boundary(0.999)


def test_binomial_edges():
    assert binomial(5, 2) == 10
    assert binomial(3, 4) == 0 and binomial(3, -1) == 0
    assert binomial(64, 32) == 1832624140942590534


def test_arithmetic():
    f, g = Polynomial([1, 2]), Polynomial([0, 1, 1])
    assert f + g == Polynomial([1, 3, 1])
    assert f - f == Polynomial.zero()
    assert f * g == Polynomial([0, 1, 3, 2])
    assert 2 * f == Polynomial([2, 4])
    assert f.shift(2) == Polynomial([0, 0, 1, 2])


@given(polynomials(12), disc_points(1.0), st.integers(1, 12))
def test_quotient_coefficients_are_shifted_evaluations(f, zeta, m):
    q = f.difference_quotient(zeta)
    assert abs(q[m - 1] - f.backward_shift(m)(zeta)) <= 1e-12 * (1 + np.abs(f.coeffs).sum())


@given(polynomials(40), st.integers(0, 32), st.integers(0, 32))
def test_derivatives_compose(f, a, b):
    lhs = f.derivative(a).derivative(b)
    rhs = f.derivative(a + b)
    scale = 1 + np.abs(rhs.coeffs).max()
    assert lhs.allclose(rhs, rtol=1e-12, atol=1e-12 * scale)


@given(polynomials(12))
def test_hardy_norm_is_positive_definite(f):
    n = hardy_inner(f, f)
    assert abs(n.imag) <= 1e-15 * (1 + n.real) and n.real >= 0
    assert (n.real == 0) == f.is_zero()


@settings(max_examples=100)
@given(polynomials(12), disc_points(1.0), disc_points(1.0))
def test_division_identity(f, zeta, z):
    q = f.difference_quotient(zeta)
    lhs = q(z) * (z - zeta) + f(zeta)
    assert abs(lhs - f(z)) <= 1e-12 * (1 + np.abs(f.coeffs).sum())


@given(polynomials(10), st.floats(0, 1), disc_points(1.0))
def test_dilation_evaluates_at_scaled_point(f, r, z):
    assert abs(f.dilate(r)(z) - f(r * z)) <= 1e-12 * (1 + np.abs(f.coeffs).sum())
