"""Seeded verification batteries behind ``dirkit verify``.

Each battery is a function ``(rng, cfg) -> list[CheckRecord]``.  Batteries are
grouped into suites; the suite runner gives every battery its own generator
derived from the global seed and the battery name, so results do not depend
on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import dirichlet as dl
from . import greens as gr
from . import operators as op
from .dirichlet import AllowableTuple, CircleDistribution, DiscMeasure, SIGMA
from .poly import Polynomial
from .quadrature import QuadratureSpec, dirichlet_quadrature_matrix
from .reports import CheckRecord, compare, exact

__all__ = ["DEFAULT_TOLERANCES", "SuiteConfig", "SUITES", "battery_names", "random_polynomial",
           "random_disc_point", "random_circle_measure", "random_measure", "random_distribution",
           "random_tuple", "aggregate"]

DEFAULT_TOLERANCES = {
    "green.recurrence": 1e-11,
    "green.mobius": 1e-11,
    "green.symmetry": 1e-11,
    "green.sandwich": 1e-12,
    "green.series": 1e-11,
    "green.laplacian": 1e-5,
    "douglas.k1": 1e-4,
    "douglas.k": 1e-8,
    "douglas.near_boundary": 1e-4,
    "douglas.monomial": 1e-8,
    "identities.forms": 1e-10,
    "identities.monotone": 1e-12,
    "operators.moments": 1e-8,
    "operators.psd": 1e-10,
    "operators.order": 1e-9,
    "operators.duality": 1e-12,
    "operators.counterexample": 1e-3,
}


@dataclass
class SuiteConfig:
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    douglas_ks: tuple = (1, 2, 3, 4)
    douglas_samples: int = 50
    identity_cases: int = 200
    exact_max: int = 30
    exact_only: bool = False
    orders_only: bool = False

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def override(self, name: str, value: float):
        if name not in self.tolerances:
            raise KeyError(f"unknown tolerance {name!r}; known: {', '.join(sorted(self.tolerances))}")
        self.tolerances[name] = float(value)

    def to_dict(self) -> dict:
        return {"tolerances": dict(sorted(self.tolerances.items())),
                "douglas_ks": list(self.douglas_ks), "douglas_samples": self.douglas_samples,
                "identity_cases": self.identity_cases, "exact_max": self.exact_max,
                "exact_only": self.exact_only, "orders_only": self.orders_only}


# ---------------------------------------------------------------- random inputs

def random_polynomial(rng, max_degree: int, min_degree: int = 0) -> Polynomial:
    """Coefficients uniform in the complex unit square ``[0,1) x [0,1)``."""
    deg = int(rng.integers(min_degree, max_degree + 1))
    return Polynomial(rng.random(deg + 1) + 1j * rng.random(deg + 1))


def random_disc_point(rng, radius: float = 0.9) -> complex:
    """Uniform (area) sample of ``|z| <= radius``."""
    return complex(radius * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random()))


def _circle_atoms(rng, count: int):
    return [(np.exp(2j * np.pi * rng.random()), float(rng.uniform(0.1, 1.0))) for _ in range(count)]


def random_circle_measure(rng, with_lebesgue: bool = True) -> CircleDistribution:
    """Positive measure on the circle: a multiple of arc length plus point masses."""
    lam = float(rng.uniform(0.2, 1.0)) if with_lebesgue else 0.0
    return CircleDistribution({0: lam} if lam else {}, _circle_atoms(rng, int(rng.integers(0, 3))))


def random_measure(rng, interior: bool = True, boundary: bool = True) -> DiscMeasure:
    """Interior atoms, boundary atoms and a multiple of arc length."""
    atoms = []
    if interior:
        atoms += [(random_disc_point(rng, 0.95), float(rng.uniform(0.1, 1.0)))
                  for _ in range(int(rng.integers(1, 4)))]
    if boundary:
        atoms += _circle_atoms(rng, int(rng.integers(0, 3)))
    lam = float(rng.uniform(0.0, 1.0)) if boundary else 0.0
    return DiscMeasure(tuple(atoms), CircleDistribution({0: lam} if lam else {}))


def random_distribution(rng, width: int = 4) -> CircleDistribution:
    """Real (hermitian) distribution with random, possibly signed, Fourier data."""
    coeffs = {0: float(rng.uniform(-1, 1))}
    for n in range(1, width + 1):
        coeffs[n] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return CircleDistribution(coeffs)


def random_tuple(rng, m: int) -> AllowableTuple:
    """Normalised tuple whose components are positive measures."""
    mu0 = random_circle_measure(rng)
    mu0 = mu0.scaled(1.0 / mu0.total_mass)
    rest = [random_circle_measure(rng) for _ in range(m - 1)]
    return AllowableTuple((mu0, *rest), random_measure(rng))


def aggregate(name: str, records: list[CheckRecord], tol: float) -> CheckRecord:
    """Collapse a family of records into its worst case."""
    if not records:
        return CheckRecord(name, 0.0, 0.0, 0.0, 0.0, tol, True, {"cases": 0})
    worst = max(range(len(records)), key=lambda i: (not records[i].passed, records[i].rel_err))
    w = records[worst]
    fails = sum(not r.passed for r in records)
    return CheckRecord(name, w.lhs, w.rhs, w.abs_err, w.rel_err, tol, fails == 0,
                       {**w.details, "cases": len(records), "failures": fails, "worst_case": w.name})


def _residual_record(name: str, residual: np.ndarray, scale: np.ndarray, tol: float, **details):
    rel = np.abs(residual) / scale
    i = int(np.argmax(rel))
    return CheckRecord(name, float(np.abs(residual).ravel()[i]), 0.0, float(np.abs(residual).ravel()[i]),
                       float(rel.ravel()[i]), tol, bool(rel.ravel()[i] <= tol),
                       {"points": int(rel.size), **details})


# ---------------------------------------------------------------- green suite

def _green_grid(rng):
    r = (np.arange(40) + 0.5) / 40
    t = 2 * np.pi * np.arange(40) / 40
    z = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    zetas = np.array([random_disc_point(rng, 0.95) for _ in range(20)])
    zz, ww = np.meshgrid(z, zetas, indexing="ij")
    return zz.ravel(), ww.ravel(), r


def green_identities(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    z, zeta, radii = _green_grid(rng)
    a = np.repeat(np.array([random_disc_point(rng, 0.9) for _ in range(20)])[None, :], 1600, 0).ravel()
    out = []
    rec, mob, sym, pos, sand = [], [], [], [], []
    for k in range(1, 9):
        g = gr.green_k(k, z, zeta)
        scale = 1 + np.abs(g)
        if k >= 2:
            rec.append(_residual_record(f"k={k}", gr.green_recurrence_residual(k, z, zeta), scale,
                                        cfg.tol("green.recurrence")))
            lo, hi = gr.sandwich_bounds(k, z, zeta)
            u = gr.positive_green(k, z, zeta)
            excess = np.maximum(lo - u, 0) + np.maximum(u - hi, 0)
            sand.append(_residual_record(f"k={k}", excess, np.ones_like(u), cfg.tol("green.sandwich")))
        phi_res = np.empty_like(g)
        for aa in np.unique(a):
            sel = a == aa
            phi_res[sel] = gr.mobius_transport_residual(k, aa, z[sel], zeta[sel])
        mob.append(_residual_record(f"k={k}", phi_res, scale, cfg.tol("green.mobius")))
        sym.append(_residual_record(f"k={k}", g - gr.green_k(k, zeta, z), scale, cfg.tol("green.symmetry")))
        u = gr.positive_green(k, z, zeta)
        pos.append(CheckRecord(f"k={k}", float(u.min()), 0.0, 0.0, 0.0, 0.0, bool(u.min() > 0),
                               {"points": int(u.size)}))
    out.append(aggregate("green.recurrence", rec, cfg.tol("green.recurrence")))
    out.append(aggregate("green.mobius", mob, cfg.tol("green.mobius")))
    out.append(aggregate("green.symmetry", sym, cfg.tol("green.symmetry")))
    out.append(aggregate("green.sandwich", sand, cfg.tol("green.sandwich")))
    out.append(aggregate("green.positivity", pos, 0.0))
    return out


def green_boundary(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    theta = 2 * np.pi * np.arange(40) / 40
    zetas = np.array([random_disc_point(rng, 0.95) for _ in range(20)])
    recs = []
    for k in range(2, 9):
        for t in range(2, 7):
            r = 1 - 10.0 ** (-t)
            z = (r * np.exp(1j * theta))[:, None] * np.ones(20)[None, :]
            zeta = np.ones(40)[:, None] * zetas[None, :]
            g = np.abs(gr.green_k(k, z, zeta))
            lim = 2 * (1 - r * r) ** k * (1 - np.abs(zeta) ** 2) ** k / ((k - 1) * np.abs(1 - np.conj(zeta) * z) ** 2)
            ratio = float(np.max(g / lim))
            recs.append(CheckRecord(f"k={k},t={t}", ratio, 1.0, max(0.0, ratio - 1), max(0.0, ratio - 1),
                                    0.0, bool(ratio <= 1.0)))
    return [aggregate("green.boundary_vanishing", recs, 0.0)]


def _series_terms(k: int, x: float) -> int:
    n = 16
    while n < 2_000_000 and gr.g_ratio_tail_bound(k, x, n) > 1e-17 * gr.g_ratio_series(k, x, 1):
        n *= 2
    return n


def green_series(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    radii = (np.arange(40) + 0.5) / 40
    xs = 1 - radii**2
    recs, mono = [], []
    for k in range(2, 9):
        vals = []
        for x in xs:
            n = _series_terms(k, float(x))
            s = gr.g_ratio_series(k, float(x), n)
            vals.append(s)
            recs.append(compare(f"k={k},x={x:.6f}", s, gr.g_ratio_direct(k, float(x)), cfg.tol("green.series"),
                                scale=abs(gr.g_ratio_direct(k, float(x))),
                                terms=n, tail_bound=gr.g_ratio_tail_bound(k, float(x), n)))
        # x decreases along the grid, so the series values must decrease as well
        steps = np.diff(vals)
        mono.append(CheckRecord(f"k={k}", float(steps.max()), 0.0, max(0.0, float(steps.max())),
                                max(0.0, float(steps.max())), 0.0, bool(steps.max() < 0)))
    return [aggregate("green.series_ratio", recs, cfg.tol("green.series")),
            aggregate("green.series_monotone", mono, 0.0)]


def green_laplacian(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    recs = []
    tol = cfg.tol("green.laplacian")
    for i in range(200):
        k = int(rng.integers(2, 9))
        zeta = random_disc_point(rng, 0.9)
        while True:
            z = random_disc_point(rng, 0.95)
            if abs(z - zeta) >= 0.1:
                break
        res = gr.laplacian_relation_residual(k, z, zeta)
        recs.append(CheckRecord(f"case={i},k={k}", abs(res), 0.0, abs(res), abs(res), tol, bool(abs(res) <= tol)))
    return [aggregate("green.laplacian", recs, tol)]


# ---------------------------------------------------------------- douglas suite

def _douglas_for_k(k: int):
    def battery(rng, cfg: SuiteConfig) -> list[CheckRecord]:
        tol = cfg.tol("douglas.k1" if k == 1 else "douglas.k")
        out = []
        for i in range(cfg.douglas_samples):
            f = random_polynomial(rng, 12, k)
            zeta = random_disc_point(rng, 0.9)
            r = dl.verify_local_douglas(f, k, zeta, tol=tol)
            r.name = f"douglas.k{k}[{i:02d}]"
            out.append(r)
        return out
    return battery


MONOMIAL_POINTS = (0j, 0.5 + 0j, 0.3 + 0.4j, 0.99 + 0j)


def douglas_monomials(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    """Three routes for ``D_{zeta,k}(z^m, z^n)``, ``k <= m <= n <= 6``, plus the companion integral."""
    from .quadrature import hk_quadrature

    out = []
    for zeta in MONOMIAL_POINTS:
        near = abs(zeta) > 0.95
        tol = cfg.tol("douglas.near_boundary") if near else cfg.tol("douglas.monomial")
        recur, quad, dq, hk = [], [], [], []
        for k in range(1, 7):
            closed = dl.point_form_matrix(k, zeta, 7)
            qmat, est = dirichlet_quadrature_matrix(k, zeta, 6)
            for m in range(k, 7):
                for n in range(m, 7):
                    c = closed[m, n]
                    label = f"k={k},m={m},n={n}"
                    recur.append(compare(label, dl.point_form_recursive(k, zeta, m, n), c, tol))
                    quad.append(compare(label, qmat[m, n], c, tol, error_estimate=est))
                    dq.append(compare(label, dl.d_point_closed(Polynomial.monomial(m), Polynomial.monomial(n), k, zeta),
                                      c, tol))
                    hk.append(compare(label, hk_quadrature(m, n, k, zeta).value,
                                      dl.hk_closed_form(m, n, k, zeta), tol))
        tag = f"[zeta={zeta.real:g}{zeta.imag:+g}i]"
        out.append(aggregate(f"douglas.monomial.recursion{tag}", recur, tol))
        out.append(aggregate(f"douglas.monomial.quadrature{tag}", quad, tol))
        out.append(aggregate(f"douglas.monomial.difference_quotient{tag}", dq, tol))
        out.append(aggregate(f"douglas.monomial.companion_integral{tag}", hk, tol))
    return out


def douglas_boundary(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    recs = []
    for i in range(20):
        k = int(rng.integers(1, 5))
        f = random_polynomial(rng, 12, k)
        zeta = complex(np.exp(2j * np.pi * rng.random()))
        r = dl.verify_local_douglas(f, k, zeta, tol=cfg.tol("douglas.k"))
        r.name = f"case={i},k={k}"
        recs.append(r)
    return [aggregate("douglas.boundary", recs, cfg.tol("douglas.k"))]


def douglas_near_boundary(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    recs = []
    tol = cfg.tol("douglas.near_boundary")
    for i in range(20):
        k = int(rng.integers(1, 5))
        f = random_polynomial(rng, 12, k)
        zeta = complex(0.99 * np.exp(2j * np.pi * rng.random()))
        r = dl.verify_local_douglas(f, k, zeta, tol=tol)
        r.name = f"case={i},k={k}"
        recs.append(r)
    return [aggregate("douglas.near_boundary", recs, tol)]


# ---------------------------------------------------------------- identities suite

SUM_LEMMA_R = (Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
MAGIC_X = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def exact_sum_lemma(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    recs = []
    for m in range(cfg.exact_max + 1):
        for k in range(m + 1):
            for r in SUM_LEMMA_R:
                lhs, rhs = dl.sum_lemma_sides(m, k, r)
                recs.append(exact(f"m={m},k={k},r={r}", lhs, rhs))
    return [aggregate("identities.sum_lemma", recs, 0.0)]


def exact_magic(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    recs = []
    for n in range(1, cfg.exact_max + 1):
        for m in range(n):
            for x in MAGIC_X:
                lhs, rhs = dl.magic_identity_sides(n, m, x)
                recs.append(exact(f"n={n},m={m},x={x}", lhs, rhs))
    return [aggregate("identities.magic", recs, 0.0)]


def identity_forms(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    tol = cfg.tol("identities.forms")
    mono_tol = cfg.tol("identities.monotone")
    fams: dict[str, list] = {k: [] for k in (
        "difference_formula", "one_step_up", "one_step_up_circle", "annihilation", "backward_monotone",
        "multiplication_monotone", "dilation", "boundedness")}
    ratios = []
    for i in range(cfg.identity_cases):
        f = random_polynomial(rng, 12)
        k = int(rng.integers(1, 5))
        mu = random_measure(rng)
        fams["difference_formula"].append(dl.verify_difference_formula(f, k, mu, tol))
        fams["one_step_up"].append(dl.verify_one_step_up(f, k - 1, mu, tol))
        fams["one_step_up_circle"].append(dl.verify_one_step_up(f, k - 1, random_distribution(rng), tol))
        fams["annihilation"].append(dl.annihilation_check(f, k, k + int(rng.integers(1, 4)),
                                                          random_distribution(rng), tol))
        fams["backward_monotone"].append(dl.backward_shift_monotonicity(f, k, mu, mono_tol))
        fams["multiplication_monotone"].append(dl.multiplication_monotonicity(f, k, mu, mono_tol))
        r = float(rng.random())
        dil = dl.verify_dilation_bound(f, k, mu, r, tol)
        ratios.append(dil.details["observed_ratio"])
        fams["dilation"].append(dil)
        if k >= 2:
            fams["boundedness"].append(dl.boundedness_check(f, k, mu, tol))
    out = [aggregate(f"identities.{name}", recs,
                     mono_tol if "monotone" in name else tol) for name, recs in sorted(fams.items())]
    for rec in out:
        if rec.name == "identities.dilation":
            rec.details["max_observed_ratio"] = max(ratios)
    return out


def identity_shift_bn(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    tol = cfg.tol("identities.forms")
    match, sign, isometry = [], [], []
    for i in range(cfg.identity_cases // 4):
        k = int(rng.integers(1, 5))
        f = random_polynomial(rng, 8)
        mu = random_measure(rng)
        mu_t = random_measure(rng, interior=False)
        for n in range(1, k + 7):
            rec = op.shift_bn_form(mu, k, f, n, tol)
            rec.name = f"case={i},k={k},n={n}"
            match.append(rec)
            if n >= k:
                scale = rec.details["term_scale"]
                val = (-1) ** k * rec.lhs
                sign.append(CheckRecord(rec.name, val, 0.0, max(0.0, -val), max(0.0, -val) / scale, tol,
                                        bool(val >= -tol * scale)))
        iso = op.shift_bn_form(mu_t, k, f, k + 1, tol)
        iso.name = f"case={i},k={k}"
        isometry.append(iso)
    return [aggregate("identities.shift_bn_closed_form", match, tol),
            aggregate("identities.shift_bn_sign", sign, tol),
            aggregate("identities.shift_bn_isometry", isometry, tol)]


# ---------------------------------------------------------------- operators suite

ALPHAS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def operators_d_alpha(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    tol = cfg.tol("operators.order")
    out = []
    for alpha in ALPHAS:
        model = op.d_alpha_shift(alpha, 61)
        rep = op.classify_order(model, 20, 40, tol)
        k = math.ceil(alpha)
        if alpha != int(alpha):
            out.append(CheckRecord(f"operators.d_alpha[{alpha}].order", rep.inferred_order, k, 0.0, 0.0, tol,
                                   rep.inferred_order == k, {"consistent": rep.consistent_orders[:5]}))
        else:
            lo, hi = rep.eigen_ranges[k + 1]
            err = max(abs(lo), abs(hi))
            out.append(CheckRecord(f"operators.d_alpha[{alpha}].isometry", err, 0.0, err, err, tol, err <= tol,
                                   {"order": k + 1, "inferred": rep.inferred_order}))
        g = op.growth_check(model, k)
        out.append(CheckRecord(f"operators.d_alpha[{alpha}].growth", max(g.ratios), g.slack * g.reference, 0.0,
                               0.0, 0.0, g.bounded, {"m": k}))
    return out


def operators_round_trip(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    tol = cfg.tol("operators.moments")
    psd_tol = cfg.tol("operators.psd")
    four, top, norm, psd = [], [], [], []
    d = 8
    for i in range(10):
        m = int(rng.integers(1, 4))
        t = random_tuple(rng, m)
        model = op.model_from_tuple(t, d + m)
        ext = op.extract_tuple(model, m, d, psd_tol)
        for j in range(m):
            for n in range(-d, d + 1):
                got = ext.fourier[j, n] if n >= 0 else np.conj(ext.fourier[j, -n])
                four.append(compare(f"tuple={i},j={j},n={n}", got, t.distributions[j].coef(n), tol))
        ref = t.top.moment_matrix(d)
        top.append(compare(f"tuple={i}", 0.0, float(np.abs(ext.top_moments - ref).max()), tol,
                           scale=1 + float(np.abs(ref).max())))
        psd.append(CheckRecord(f"tuple={i}", ext.min_top_eigenvalue, -psd_tol, 0.0, 0.0, psd_tol, ext.psd))
        for r in op.verify_norm_formula(model, m, d, rng=rng, tol=tol):
            r.name = f"tuple={i}/{r.name}"
            norm.append(r)
    return [aggregate("operators.round_trip.fourier", four, tol),
            aggregate("operators.round_trip.top_moments", top, tol),
            aggregate("operators.round_trip.top_psd", psd, psd_tol),
            aggregate("operators.norm_formula", norm, tol)]


def counterexample_tuple() -> AllowableTuple:
    """Signed second distribution with a positive Gram matrix (large top measure)."""
    return AllowableTuple((SIGMA, CircleDistribution({0: 0.5, 1: 0.8})), DiscMeasure.lebesgue(5.0))


def operators_analytic(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    psd_tol = cfg.tol("operators.psd")
    d = 8
    recs = []
    for i in range(5):
        m = int(rng.integers(2, 4))
        t = random_tuple(rng, m)
        rep = op.verify_analytic_model_inequality(op.model_from_tuple(t, d + m), m, d, psd_tol)
        worst = min(rep.min_eigenvalues.values())
        recs.append(CheckRecord(f"tuple={i},m={m}", worst, -psd_tol, 0.0, 0.0, psd_tol, rep.passed))
    bad = op.verify_analytic_model_inequality(op.model_from_tuple(counterexample_tuple(), d + 2), 2, d, psd_tol)
    lam = bad.min_eigenvalues[1]
    need = -cfg.tol("operators.counterexample")
    return [aggregate("operators.analytic_inequality", recs, psd_tol),
            CheckRecord("operators.signed_distribution_detected", lam, need, 0.0, 0.0,
                        cfg.tol("operators.counterexample"), bool(lam <= need))]


def operators_structure(rng, cfg: SuiteConfig) -> list[CheckRecord]:
    """Form duality, the difference recurrence, two routes to ``B_n`` and horizon hygiene."""
    tol = cfg.tol("operators.duality")
    mtol = cfg.tol("operators.moments")
    dual, recur, routes, trunc = [], [], [], []
    for i in range(5):
        alpha = float(rng.uniform(0, 3))
        model = op.d_alpha_shift(alpha, 24)
        for n in range(0, 5):
            b = op.backward_form_matrix(model, n, 10)
            be = op.beta_form_matrix(model, n, 10)
            dual.append(compare(f"alpha={alpha:.3f},n={n}", float(np.abs(b - (-1) ** n * be).max()), 0.0, tol))
            nxt = op.beta_form_matrix(model, n + 1, 9)
            rhs = be[1:, 1:] - be[:-1, :-1]
            # alternating sums: error measured against the size of the summed terms
            terms = 2 ** (n + 1) * float(np.abs(model.psi(10 + n)).max())
            recur.append(compare(f"alpha={alpha:.3f},n={n}", float(np.abs(nxt - rhs).max()), 0.0, tol,
                                 scale=1 + terms))
        big = op.d_alpha_shift(alpha, 48)
        a = op.OperatorModel(big.matrix, big.cyclic, 20)
        b = op.OperatorModel(model.matrix, model.cyclic, 20)
        diff = float(np.abs(op.beta_form_matrix(a, 3, 17) - op.beta_form_matrix(b, 3, 17)).max())
        trunc.append(compare(f"alpha={alpha:.3f}", diff, 0.0, 1e-13))
    for i in range(5):
        m = int(rng.integers(1, 4))
        t = random_tuple(rng, m)
        model = op.model_from_tuple(t, 12)
        f = random_polynomial(rng, 4)
        for n in range(1, 6):
            closed = op.tuple_bn_value(t, f, n)
            matrix = op.backward_form(model, n, f, f).real
            scale = 1 + sum(math.comb(n, j) * t.norm2(f.shift(j)) for j in range(n + 1))
            routes.append(compare(f"tuple={i},n={n}", matrix, closed, mtol, scale=scale))
    return [aggregate("operators.duality", dual, tol), aggregate("operators.recurrence", recur, tol),
            aggregate("operators.bn_two_routes", routes, mtol), aggregate("operators.truncation", trunc, 1e-13)]


SUITES: dict[str, dict[str, Callable]] = {
    "green": {
        "green.identities": green_identities,
        "green.boundary": green_boundary,
        "green.series": green_series,
        "green.laplacian": green_laplacian,
    },
    "douglas": {
        **{f"douglas.k{k}": _douglas_for_k(k) for k in (1, 2, 3, 4)},
        "douglas.monomials": douglas_monomials,
        "douglas.boundary": douglas_boundary,
        "douglas.near_boundary": douglas_near_boundary,
    },
    "identities": {
        "identities.exact_sum_lemma": exact_sum_lemma,
        "identities.exact_magic": exact_magic,
        "identities.forms": identity_forms,
        "identities.shift_bn": identity_shift_bn,
    },
    "operators": {
        "operators.d_alpha": operators_d_alpha,
        "operators.round_trip": operators_round_trip,
        "operators.analytic": operators_analytic,
        "operators.structure": operators_structure,
    },
}


def battery_names(suite: str, cfg: SuiteConfig) -> list[str]:
    if suite == "all":
        names = [n for s in ("green", "douglas", "identities", "operators") for n in battery_names(s, cfg)]
        return sorted(names)
    names = list(SUITES[suite])
    if suite == "douglas":
        names = [n for n in names if not n.startswith("douglas.k") or int(n[-1]) in cfg.douglas_ks]
        if cfg.orders_only:
            names = [n for n in names if n.startswith("douglas.k")]
    if suite == "identities" and cfg.exact_only:
        names = [n for n in names if ".exact_" in n]
    return sorted(names)


def lookup(name: str) -> Callable:
    for group in SUITES.values():
        if name in group:
            return group[name]
    raise KeyError(name)
