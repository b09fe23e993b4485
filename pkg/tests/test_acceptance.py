"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every criterion logs one PASS/FAIL line, shown in the terminal summary.
"""

import contextlib
import json
import math
import subprocess
import sys
import time
import zlib
from fractions import Fraction

import numpy as np
import pytest

from dirkit import Polynomial, batteries
from dirkit.dirichlet import (d_point_closed, d_sigma, hk_closed_form, magic_identity_sides, point_form_matrix,
                              point_form_recursive, sum_lemma_sides)
from dirkit.operators import classify_order, d_alpha_shift
from dirkit.quadrature import dirichlet_quadrature_matrix, hk_quadrature

SEED = 7


def run_battery(name: str, cfg=None):
    cfg = cfg or batteries.SuiteConfig()
    rng = np.random.default_rng([SEED, zlib.crc32(name.encode())])
    return batteries.lookup(name)(rng, cfg)


def assert_records(records, tol, count=None):
    if count is not None:
        assert len(records) == count
    bad = [r.name for r in records if not (r.passed and r.rel_err <= tol and r.tolerance <= tol)]
    assert not bad, f"failing records: {bad}"


@contextlib.contextmanager
def criterion(log, number: int, title: str, budget: float):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed <= budget, f"took {elapsed:.1f} s, budget {budget:.0f} s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        log.append((number, f"criterion {number:2d} {status}  {title}  ({elapsed:.1f} s / {budget:.0f} s)"))


def test_criterion_01_local_douglas(acceptance_log):
    with criterion(acceptance_log, 1, "local Douglas formula, quadrature vs closed form", 60):
        for k in (2, 3, 4):
            recs = run_battery(f"douglas.k{k}")
            assert_records(recs, 1e-8, count=50)
        recs = run_battery("douglas.k1")
        assert_records(recs, 1e-4, count=50)
        for r in recs:
            assert abs(r.details["zeta"]) <= 0.9


def _monomial_closed(k, m, n, zeta):
    # sum_{l=k-1}^{m-1} C(l,k-1) |zeta|^(2(m-1-l)) conj(zeta)^(n-m), for m <= n
    return np.conj(zeta) ** (n - m) * sum(math.comb(l, k - 1) * abs(zeta) ** (2 * (m - 1 - l))
                                          for l in range(k - 1, m))


def test_criterion_02_monomial_formula(acceptance_log):
    with criterion(acceptance_log, 2, "monomial formula: closed form, recursion, quadrature", 30):
        for zeta in (0j, 0.5 + 0j, 0.3 + 0.4j, 0.99 + 0j):
            tol = 1e-4 if abs(zeta) > 0.95 else 1e-8
            for k in range(1, 7):
                table = point_form_matrix(k, zeta, 7)
                quad, _ = dirichlet_quadrature_matrix(k, zeta, 6)
                for m in range(k, 7):
                    for n in range(m, 7):
                        ref = _monomial_closed(k, m, n, zeta)
                        scale = 1 + abs(ref)
                        assert abs(table[m, n] - ref) <= 1e-12 * scale
                        assert abs(point_form_recursive(k, zeta, m, n) - ref) <= tol * scale
                        assert abs(d_point_closed(Polynomial.monomial(m), Polynomial.monomial(n), k, zeta)
                                   - ref) <= 1e-12 * scale
                        assert abs(quad[m, n] - ref) <= tol * scale
                        hk = hk_closed_form(m, n, k, zeta)
                        assert abs(hk_quadrature(m, n, k, zeta).value - hk) <= tol * (1 + abs(hk))


def test_criterion_03_exact_identities(acceptance_log):
    with criterion(acceptance_log, 3, "exact integer identities", 5):
        failures = 0
        for m in range(31):
            for k in range(m + 1):
                for r in (-2, -1, 0, Fraction(1, 2), 1, 2, 3):
                    lhs, rhs = sum_lemma_sides(m, k, r)
                    failures += lhs != rhs
                    assert isinstance(lhs, Fraction)
        for n in range(1, 31):
            for m in range(n):
                for x in (-1, 0, Fraction(1, 2), 1, 2, 3):
                    lhs, rhs = magic_identity_sides(n, m, x)
                    failures += lhs != rhs
        assert failures == 0


def test_criterion_04_green_suite(acceptance_log):
    with criterion(acceptance_log, 4, "Green kernel identities and Laplacian relation", 30):
        recs = run_battery("green.identities") + run_battery("green.series") + run_battery("green.boundary")
        names = {r.name for r in recs}
        for family in ("recurrence", "mobius", "symmetry", "sandwich"):
            assert any(family in n for n in names), family
        assert any("series" in n for n in names)
        assert_records(recs, 1e-11)
        grid = next(r for r in recs if r.name == "green.recurrence")
        assert grid.details["points"] == 40 * 40 * 20
        lap = run_battery("green.laplacian")
        assert_records(lap, 1e-5)
        assert lap[0].details["cases"] == 200


def test_criterion_05_difference_identities(acceptance_log):
    with criterion(acceptance_log, 5, "difference, shift and dilation identities", 10):
        recs = run_battery("identities.forms")
        names = {r.name for r in recs}
        for family in ("difference_formula", "one_step_up", "annihilation", "backward_monotone",
                       "multiplication_monotone", "dilation"):
            assert f"identities.{family}" in names
        for r in recs:
            if r.name != "identities.boundedness":
                assert r.details["cases"] == 200
        assert_records(recs, 1e-10)
        dil = next(r for r in recs if r.name == "identities.dilation")
        assert "max_observed_ratio" in dil.details


def test_criterion_06_shift_backward_differences(acceptance_log):
    with criterion(acceptance_log, 6, "backward differences of the shift, closed form and signs", 20):
        recs = run_battery("identities.shift_bn")
        assert {r.name for r in recs} == {"identities.shift_bn_closed_form", "identities.shift_bn_sign",
                                          "identities.shift_bn_isometry"}
        assert_records(recs, 1e-10)


def test_criterion_07_model_round_trip(acceptance_log):
    with criterion(acceptance_log, 7, "model round trip and norm formula", 30):
        recs = run_battery("operators.round_trip")
        by_name = {r.name: r for r in recs}
        assert_records([by_name["operators.round_trip.fourier"], by_name["operators.round_trip.top_moments"],
                        by_name["operators.norm_formula"]], 1e-8)
        assert by_name["operators.round_trip.top_psd"].passed
        assert by_name["operators.round_trip.top_psd"].tolerance <= 1e-10
        assert by_name["operators.round_trip.top_moments"].details["cases"] == 10


def test_criterion_08_d_alpha_family(acceptance_log):
    with criterion(acceptance_log, 8, "D_alpha shifts: order evidence, isometries, growth", 20):
        for alpha in (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
            model = d_alpha_shift(alpha, 61)
            rep = classify_order(model, 20, 40, 1e-9)
            k = math.ceil(alpha)
            if alpha != int(alpha):
                assert rep.inferred_order == k, (alpha, rep.consistent_orders)
            else:
                lo, hi = rep.eigen_ranges[k + 1]
                assert max(abs(lo), abs(hi)) <= 1e-9
                assert k + 1 in rep.consistent_orders
        recs = run_battery("operators.d_alpha")
        growth = [r for r in recs if r.name.endswith(".growth")]
        assert len(growth) == 7 and all(r.passed for r in growth)
        assert all(r.passed for r in recs)


def test_criterion_09_analytic_inequality(acceptance_log):
    with criterion(acceptance_log, 9, "analytic-model inequality and signed-distribution detection", 10):
        recs = run_battery("operators.analytic")
        by_name = {r.name: r for r in recs}
        ineq = by_name["operators.analytic_inequality"]
        assert ineq.passed and ineq.details["cases"] == 5 and ineq.tolerance <= 1e-10
        detect = by_name["operators.signed_distribution_detected"]
        assert detect.passed and detect.lhs <= -1e-3


def test_criterion_10_reproducible_report(acceptance_log, tmp_path):
    with criterion(acceptance_log, 10, "verify all --seed 7: byte-identical, exit 0", 600):
        outputs = []
        for i in range(2):
            target = tmp_path / f"run{i}.jsonl"
            proc = subprocess.run([sys.executable, "-m", "dirkit", "verify", "all", "--seed", "7",
                                   "--out", str(target)], capture_output=True, check=False)
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.append(target.read_bytes())
        assert outputs[0] == outputs[1]
        summary = json.loads(outputs[0].splitlines()[-1])
        assert summary["failed"] == 0 and summary["exit_code"] == 0
