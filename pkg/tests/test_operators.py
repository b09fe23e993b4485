import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirkit import Polynomial
from dirkit.dirichlet import SIGMA, AllowableTuple, CircleDistribution, DiscMeasure, gram_matrix
from dirkit.operators import (HorizonError, OperatorModel, backward_form, backward_form_matrix, backward_operator,
                              beta_form, beta_form_matrix, beta_operator, classify_order, d_alpha_shift,
                              extract_tuple, growth_check, model_from_gram, model_from_tuple, s_form,
                              s_form_matrix, shift_bn_form, top_form_matrix, tuple_bn_value,
                              verify_analytic_model_inequality, verify_norm_formula, weighted_shift)

from helpers import circle_points, disc_points, polynomials

Z = Polynomial.monomial
alphas = st.floats(0.0, 3.0)


def unilateral(n: int = 30) -> OperatorModel:
    return weighted_shift(np.ones(n - 1), n)


def test_beta_form_examples():
    s = unilateral()
    assert beta_form(s, 1, Z(0), Z(0)) == pytest.approx(0)
    p, q = Polynomial([1, 2j]), Polynomial([0.5, 1, 1])
    assert beta_form(s, 0, p, q) == pytest.approx(np.vdot(s.vector(q), s.vector(p)))
    d1 = d_alpha_shift(1, 20)
    for j in range(10):
        assert beta_form(d1, 2, Z(j), Z(j)) == pytest.approx(0, abs=1e-12)


def test_d_alpha_norms():
    assert np.allclose(d_alpha_shift(0, 10).matrix, unilateral(10).matrix)
    for alpha in (0.5, 1, 2.5):
        psi = d_alpha_shift(alpha, 30).moments(29)
        assert np.allclose(psi, (np.arange(30) + 1.0) ** alpha, rtol=1e-12)


def test_duality_of_difference_forms():
    m = d_alpha_shift(1.7, 30)
    for n in range(6):
        assert np.allclose(backward_form_matrix(m, n, 10), (-1) ** n * beta_form_matrix(m, n, 10), atol=1e-12)
        assert np.allclose(backward_operator(m, n), (-1) ** n * beta_operator(m, n), atol=1e-12)


def test_operator_matrix_matches_orbit_forms():
    m = d_alpha_shift(1.3, 30)
    full = beta_operator(m, 3)
    orbit = m.orbit(10)
    direct = orbit.conj() @ full @ orbit.T
    assert np.allclose(direct.T, beta_form_matrix(m, 3, 10), atol=1e-10)


def test_horizon_is_enforced():
    m = d_alpha_shift(1, 10)
    with pytest.raises(HorizonError):
        m.psi(10)
    with pytest.raises(HorizonError):
        beta_form_matrix(m, 3, 7)
    with pytest.raises(HorizonError):
        classify_order(m, 5, 5)
    with pytest.raises(HorizonError):
        extract_tuple(m, 2, 8)
    with pytest.raises(HorizonError):
        verify_analytic_model_inequality(m, 2, 8)
    with pytest.raises(HorizonError):
        s_form(m, np.eye(20), Z(12), Z(12))


def test_truncation_does_not_leak():
    small = OperatorModel(d_alpha_shift(2.2, 24).matrix, None, 20)
    big = OperatorModel(d_alpha_shift(2.2, 60).matrix, None, 20)
    for n in range(5):
        assert np.abs(beta_form_matrix(small, n, 20 - n) - beta_form_matrix(big, n, 20 - n)).max() <= 1e-13


def test_model_validation():
    with pytest.raises(ValueError):
        OperatorModel(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        OperatorModel(np.eye(2), [1, 1])
    with pytest.raises(ValueError):
        OperatorModel(np.eye(2), [1])
    with pytest.raises(ValueError):
        weighted_shift(np.ones(600))
    with pytest.raises(ValueError):
        model_from_gram(2 * np.eye(3))


def test_json_round_trip():
    m = d_alpha_shift(1.5, 8)
    back = OperatorModel.from_json(m.to_json())
    assert np.array_equal(back.matrix, m.matrix) and back.horizon == m.horizon
    ws = OperatorModel.from_json({"weighted_shift": {"weights": [1, 1, 1], "n": 4}})
    assert ws.horizon == 3
    da = OperatorModel.from_json({"d_alpha": {"alpha": 1, "n": 12}})
    assert da.moments(11)[-1] == pytest.approx(12)
    t = AllowableTuple((SIGMA,), DiscMeasure.lebesgue())
    tm = OperatorModel.from_json({"tuple": t.to_json(), "degree": 6})
    assert tm.moments(6)[-1] == pytest.approx(7)


def test_classify_examples():
    rep = classify_order(unilateral(), 5, 10)
    assert rep.inferred_order == 1
    assert all(rep.verdict(n) == "zero" for n in range(1, 6))
    hyper = model_from_tuple(AllowableTuple((SIGMA,), DiscMeasure.point(0.5)), 30)
    rep = classify_order(hyper, 6, 20)
    assert rep.inferred_order == 1
    assert all(rep.verdict(n) in ("nonpositive", "zero") for n in range(1, 7))
    rep = classify_order(d_alpha_shift(1.5, 61), 20, 40)
    assert rep.inferred_order == 2
    assert all(rep.verdict(n) in ("nonnegative", "zero") for n in range(2, 21))
    assert rep.verdict(1) == "nonpositive"


def test_three_isometry():
    m = d_alpha_shift(2, 61)
    rep = classify_order(m, 20, 40)
    lo, hi = rep.eigen_ranges[3]
    assert max(abs(lo), abs(hi)) <= 1e-9
    assert 3 in rep.consistent_orders
    for j in range(20):
        assert sum((-1) ** i * math.comb(3, i) * (j + i + 1) ** 2 for i in range(4)) == 0


def test_shift_bn_examples():
    rec = shift_bn_form(DiscMeasure.point(0.5), 1, Z(0), 2)
    assert rec.rhs == pytest.approx(-0.75) and rec.passed
    mu = DiscMeasure(((0.3j, 1.0), (1, 0.5)), SIGMA)
    f = Polynomial([1, -1, 2j])
    for k in range(1, 5):
        rec = shift_bn_form(mu, k, f, k)
        assert rec.passed
        assert rec.rhs == pytest.approx((-1) ** k * (abs(f(0.3j)) ** 2 + 0.5 * abs(f(1)) ** 2 + 6))
    circle = DiscMeasure(((1j, 2.0),), SIGMA)
    for k in range(1, 5):
        assert abs(shift_bn_form(circle, k, f, k + 1).lhs) <= 1e-10


def test_extract_examples():
    ext = extract_tuple(unilateral(), 1, 8)
    assert np.allclose(ext.fourier[0], np.eye(9)[0])
    assert np.allclose(ext.top_moments, 0) and ext.ok
    ext = extract_tuple(d_alpha_shift(1, 20), 1, 8)
    assert np.allclose(ext.fourier[0], np.eye(9)[0], atol=1e-12)
    assert np.allclose(ext.top_moments, np.eye(9), atol=1e-12)
    t = AllowableTuple((SIGMA,), DiscMeasure(((0.5, 0.5),), SIGMA))
    ext = extract_tuple(model_from_tuple(t, 9), 1, 8)
    assert np.abs(ext.top_moments - t.top.moment_matrix(8)).max() <= 1e-8
    with pytest.raises(ValueError):
        extract_tuple(unilateral(), 0, 3)


def test_s_form_examples():
    m = d_alpha_shift(1, 10)
    a = m.psi(9)
    assert s_form(m, a, Z(0), Z(0)) == 0
    ident = np.eye(10)
    assert s_form(m, ident, Z(2), Z(2)) == 2
    assert s_form(m, a, Z(2), Z(2)) == pytest.approx(a[1, 1] + a[0, 0])
    p, q = Polynomial([1, 2, 1j]), Polynomial([0, 1, 3])
    mat = s_form_matrix(a, 2)
    assert s_form(m, a, p, q) == pytest.approx(p.padded(3) @ mat @ np.conj(q.padded(3)))


def test_moment_identity_through_s_form():
    t = AllowableTuple((SIGMA, CircleDistribution({0: 1, 1: 0.3}), CircleDistribution.lebesgue(0.5)),
                       DiscMeasure(((0.4, 1.0),)))
    d = 8
    model = model_from_tuple(t, d + 3)
    for r in (1, 2):
        diff = beta_form_matrix(model, r, d) - s_form_matrix(beta_form_matrix(model, r + 1, d), d)
        expected = np.array([[t.distributions[r].coef(b - a) for b in range(d + 1)]
                                             for a in range(d + 1)])
        assert np.abs(diff - expected).max() <= 1e-8


def test_norm_formula_examples():
    recs = verify_norm_formula(unilateral(), 1, 8)
    assert all(r.passed for r in recs)
    recs = verify_norm_formula(d_alpha_shift(1, 20), 1, 8)
    assert all(r.passed for r in recs)
    mono = {r.name.split("/")[1]: r for r in recs}
    assert mono["monomial[5]"].lhs == pytest.approx(6)
    t = AllowableTuple((SIGMA,), DiscMeasure.point(0.5))
    model = model_from_tuple(t, 9)
    assert model.moments(3)[3] == pytest.approx(2.3125)
    assert all(r.passed for r in verify_norm_formula(model, 1, 8))


def test_analytic_inequality_examples():
    t = AllowableTuple((SIGMA, SIGMA), DiscMeasure.lebesgue())
    rep = verify_analytic_model_inequality(model_from_tuple(t, 10), 2, 8)
    assert rep.passed and rep.min_eigenvalues[1] == pytest.approx(1, abs=1e-8)
    rep = verify_analytic_model_inequality(unilateral(), 1, 8)
    assert rep.passed and rep.min_eigenvalues == {}
    bad = AllowableTuple((SIGMA, CircleDistribution({0: 0.5, 1: 0.8})), DiscMeasure.lebesgue(5.0))
    assert np.linalg.eigvalsh(gram_matrix(bad, 10))[0] > 0
    rep = verify_analytic_model_inequality(model_from_tuple(bad, 10), 2, 8)
    assert not rep.passed and rep.min_eigenvalues[1] <= -1e-3


def test_growth_examples():
    for alpha in (0.5, 1.0, 2.0, 2.5):
        rep = growth_check(d_alpha_shift(alpha, 60), math.ceil(alpha))
        assert rep.bounded and max(rep.ratios) <= 1 + 1e-12
    rep = growth_check(unilateral(), 1)
    assert all(a > b for a, b in zip(rep.ratios, rep.ratios[1:]))
    assert not growth_check(d_alpha_shift(2, 60), 1).bounded


def test_top_form_matrix_matches_measure_form():
    mu = DiscMeasure(((0.3 + 0.2j, 1.0), (-1, 0.5)), CircleDistribution({0: 1, 1: 0.2j}))
    from dirkit.dirichlet import measure_form_matrix
    for m in (1, 2, 3):
        assert np.allclose(top_form_matrix(mu.moment_matrix(8), m, 9), measure_form_matrix(m, mu, 9), atol=1e-13)


# ------------------------------------------------------------ properties

@settings(max_examples=30)
@given(alphas, st.integers(0, 5))
def test_difference_recurrence(alpha, n):
    m = d_alpha_shift(alpha, 30)
    nxt = beta_form_matrix(m, n + 1, 10)
    cur = beta_form_matrix(m, n, 11)
    scale = 2 ** (n + 1) * m.psi(12 + n).real.max()
    assert np.abs(nxt - (cur[1:, 1:] - cur[:-1, :-1])).max() <= 1e-12 * scale


@st.composite
def positive_tuples(draw, max_m: int = 3):
    m = draw(st.integers(1, max_m))
    dists = [SIGMA]
    for _ in range(m - 1):
        pts = draw(st.lists(st.tuples(circle_points(), st.floats(0.1, 1.0)), max_size=2))
        dists.append(CircleDistribution({0: draw(st.floats(0.0, 1.0))}, atoms=pts))
    atoms = draw(st.lists(st.tuples(disc_points(0.8), st.floats(0.1, 1.0)), max_size=2))
    return AllowableTuple(tuple(dists), DiscMeasure(tuple(atoms), CircleDistribution.lebesgue(0.5)))


@settings(max_examples=25, deadline=None)
@given(positive_tuples())
def test_extraction_round_trip(t):
    d = 8
    model = model_from_tuple(t, d + t.m)
    ext = extract_tuple(model, t.m, d)
    assert ext.ok
    for j in range(t.m):
        for n in range(d + 1):
            assert abs(ext.fourier[j, n] - t.distributions[j].coef(n)) <= 1e-8
    assert np.abs(ext.top_moments - t.top.moment_matrix(d)).max() <= 1e-8 * (1 + np.abs(ext.top_moments).max())


@settings(max_examples=25, deadline=None)
@given(positive_tuples(), polynomials(4), st.integers(1, 5))
def test_two_routes_to_backward_differences(t, f, n):
    model = model_from_tuple(t, 12)
    closed = tuple_bn_value(t, f, n)
    matrix = backward_form(model, n, f, f).real
    scale = 1 + sum(math.comb(n, j) * t.norm2(f.shift(j)) for j in range(n + 1))
    assert abs(closed - matrix) <= 1e-8 * scale


@settings(max_examples=25, deadline=None)
@given(positive_tuples(), st.integers(1, 4))
def test_extracted_top_moments_are_psd_for_consistent_orders(t, m):
    model = model_from_tuple(t, 20)
    rep = classify_order(model, m, 20 - m)
    if m in rep.consistent_orders and m >= t.m:
        assert extract_tuple(model, m, 20 - m).psd


@settings(max_examples=30, deadline=None)
@given(polynomials(8), st.integers(1, 4), st.lists(st.tuples(disc_points(0.9), st.floats(0.1, 2)), max_size=3),
       st.floats(0, 2))
def test_shift_bn_closed_form(f, k, atoms, circle_mass):
    mu = DiscMeasure(tuple(atoms), CircleDistribution.lebesgue(circle_mass))
    for n in range(1, k + 7):
        rec = shift_bn_form(mu, k, f, n)
        assert rec.passed
        if n >= k:
            assert (-1) ** k * rec.lhs >= -1e-10 * rec.details["term_scale"]
