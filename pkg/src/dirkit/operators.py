"""Finite cyclic operator models and the difference forms of their orbits.

A model is a dense matrix ``T`` with a unit cyclic vector ``e`` and a horizon
``h``: the orbit ``e, Te, ..., T^h e`` is trusted, higher powers are not (a
truncated shift is nilpotent).  Vectors of the cyclic slice are written as
polynomials ``p`` standing for ``p(T) e``, and every form is computed from the
orbit Gram matrix ``Psi[a, b] = <T^a e, T^b e>``.

Forms are linear in the first slot: ``form(p, q) = p @ M @ conj(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .dirichlet import (PSD_TOL, AllowableTuple, CircleDistribution, DiscMeasure, d_circle,
                        d_measure, gram_matrix, measure_zero)
from .poly import Polynomial, binomial
from .reports import CheckRecord, compare

__all__ = [
    "HorizonError",
    "OperatorModel",
    "beta_form_matrix",
    "backward_form_matrix",
    "beta_form",
    "backward_form",
    "beta_operator",
    "backward_operator",
    "classify_order",
    "shift_bn_form",
    "ExtractedTuple",
    "extract_tuple",
    "s_form_matrix",
    "s_form",
    "top_form_matrix",
    "verify_norm_formula",
    "verify_analytic_model_inequality",
    "d_alpha_shift",
    "weighted_shift",
    "model_from_gram",
    "model_from_tuple",
    "growth_check",
]


class HorizonError(ValueError):
    """A computation would use ``T^j e`` beyond the trusted horizon."""


class OperatorModel:
    """Dense operator with a unit cyclic vector and a trusted orbit length."""

    def __init__(self, matrix, cyclic=None, horizon: int | None = None):
        t = np.array(matrix, dtype=complex)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("operator matrix must be square")
        n = t.shape[0]
        e = np.zeros(n, dtype=complex) if cyclic is None else np.array(cyclic, dtype=complex).ravel()
        if cyclic is None:
            e[0] = 1.0
        if e.size != n:
            raise ValueError("cyclic vector has the wrong length")
        if abs(np.linalg.norm(e) - 1.0) > 1e-12:
            raise ValueError("cyclic vector must have unit norm")
        h = n - 1 if horizon is None else int(horizon)
        if not 0 <= h:
            raise ValueError("horizon must be non-negative")
        orbit = np.empty((h + 1, n), dtype=complex)
        orbit[0] = e
        for j in range(1, h + 1):
            orbit[j] = t @ orbit[j - 1]
        t.flags.writeable = False
        e.flags.writeable = False
        orbit.flags.writeable = False
        self.matrix = t
        self.cyclic = e
        self.horizon = h
        self._orbit = orbit
        self._psi = orbit @ orbit.conj().T
        self._psi.flags.writeable = False

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def orbit(self, upto: int) -> np.ndarray:
        """Rows ``T^j e`` for ``j <= upto``."""
        self._need(upto)
        return self._orbit[: upto + 1]

    def psi(self, upto: int) -> np.ndarray:
        """``Psi[a, b] = <T^a e, T^b e>`` for ``a, b <= upto``."""
        self._need(upto)
        return self._psi[: upto + 1, : upto + 1]

    def moments(self, upto: int) -> np.ndarray:
        """``||T^n e||^2`` for ``n <= upto``."""
        return np.diag(self.psi(upto)).real.copy()

    def vector(self, p: Polynomial) -> np.ndarray:
        """``p(T) e``."""
        deg = p.degree or 0
        return p.padded(deg + 1) @ self.orbit(deg)

    def _need(self, j: int):
        if j > self.horizon:
            raise HorizonError(f"needs T^{j} e but the horizon is {self.horizon}")

    def to_json(self) -> dict:
        def enc(a):
            return [[float(x.real), float(x.imag)] for x in a]
        return {"matrix": [enc(row) for row in self.matrix], "cyclic": enc(self.cyclic),
                "horizon": self.horizon}

    @classmethod
    def from_json(cls, data: Mapping) -> "OperatorModel":
        if "weighted_shift" in data:
            ws = data["weighted_shift"]
            return weighted_shift(ws["weights"], int(ws.get("n", len(ws["weights"]) + 1)))
        if "d_alpha" in data:
            da = data["d_alpha"]
            return d_alpha_shift(float(da["alpha"]), int(da["n"]))
        if "tuple" in data:
            return model_from_tuple(AllowableTuple.from_json(data["tuple"]), int(data["degree"]))

        def dec(v):
            return complex(*v) if isinstance(v, (list, tuple)) else complex(v)
        mat = [[dec(x) for x in row] for row in data["matrix"]]
        cyc = [dec(x) for x in data["cyclic"]] if "cyclic" in data else None
        return cls(mat, cyc, data.get("horizon"))


def _signed_difference(model: OperatorModel, n: int, d: int, forward: bool) -> np.ndarray:
    psi = model.psi(d + n)
    out = np.zeros((d + 1, d + 1), dtype=complex)
    for j in range(n + 1):
        sign = (-1) ** (n - j) if forward else (-1) ** j
        out += sign * math.comb(n, j) * psi[j: j + d + 1, j: j + d + 1]
    return out


def beta_form_matrix(model: OperatorModel, n: int, d: int) -> np.ndarray:
    """``[a, b] = <beta_n(T) T^a e, T^b e> = sum_j (-1)^(n-j) C(n,j) Psi[a+j, b+j]``."""
    return _signed_difference(model, n, d, forward=True)


def backward_form_matrix(model: OperatorModel, n: int, d: int) -> np.ndarray:
    """Same with signs ``(-1)^j``, i.e. ``B_n = (-1)^n beta_n``."""
    return _signed_difference(model, n, d, forward=False)


def _pair(p: Polynomial, q: Polynomial) -> tuple[np.ndarray, np.ndarray, int]:
    d = max(p.degree or 0, q.degree or 0)
    return p.padded(d + 1), q.padded(d + 1), d


def beta_form(model: OperatorModel, n: int, p: Polynomial, q: Polynomial) -> complex:
    a, b, d = _pair(p, q)
    return complex(a @ beta_form_matrix(model, n, d) @ np.conj(b))


def backward_form(model: OperatorModel, n: int, p: Polynomial, q: Polynomial) -> complex:
    a, b, d = _pair(p, q)
    return complex(a @ backward_form_matrix(model, n, d) @ np.conj(b))


def _gram_power_sum(t: np.ndarray, n: int, forward: bool) -> np.ndarray:
    out = np.zeros_like(t)
    tj = np.eye(t.shape[0], dtype=complex)
    for j in range(n + 1):
        sign = (-1) ** (n - j) if forward else (-1) ** j
        out += sign * math.comb(n, j) * (tj.conj().T @ tj)
        tj = t @ tj
    return out


def beta_operator(model: OperatorModel, n: int) -> np.ndarray:
    """Full matrix ``sum_j (-1)^(n-j) C(n,j) T*^j T^j`` (ignores the horizon)."""
    return _gram_power_sum(model.matrix, n, forward=True)


def backward_operator(model: OperatorModel, n: int) -> np.ndarray:
    return _gram_power_sum(model.matrix, n, forward=False)


# ---------------------------------------------------------------- order classification

def _scaled_backward(model: OperatorModel, n: int, d: int) -> np.ndarray:
    """``B_n`` on the orbit basis, congruence-scaled by the size of its terms.

    Entry ``[a, b]`` is divided by ``sqrt(s_a s_b)`` with
    ``s_a = sum_j C(n,j) ||T^(a+j) e||^2``; the signs of the eigenvalues do not change.
    """
    m = backward_form_matrix(model, n, d)
    psi = np.diag(model.psi(d + n)).real
    s = np.array([sum(math.comb(n, j) * psi[a + j] for j in range(n + 1)) for a in range(d + 1)])
    r = 1.0 / np.sqrt(s)
    return m * r[:, None] * r[None, :]


@dataclass
class OrderReport:
    m_max: int
    degree: int
    tol: float
    eigen_ranges: dict = field(default_factory=dict)
    consistent_orders: list = field(default_factory=list)

    @property
    def inferred_order(self) -> int | None:
        """Smallest order consistent with the sampled range (evidence, not proof)."""
        return self.consistent_orders[0] if self.consistent_orders else None

    def verdict(self, n: int) -> str:
        lo, hi = self.eigen_ranges[n]
        if lo >= -self.tol and hi <= self.tol:
            return "zero"
        if lo >= -self.tol:
            return "nonnegative"
        if hi <= self.tol:
            return "nonpositive"
        return "indefinite"

    def to_dict(self) -> dict:
        return {"m_max": self.m_max, "degree": self.degree, "tol": self.tol,
                "forms": {str(n): {"min": lo, "max": hi, "sign": self.verdict(n)}
                          for n, (lo, hi) in self.eigen_ranges.items()},
                "consistent_orders": self.consistent_orders,
                "inferred_order": self.inferred_order}


def classify_order(model: OperatorModel, m_max: int, d: int, tol: float = 1e-9) -> OrderReport:
    """Sign pattern of ``B_n(T)`` on ``span{e, ..., T^d e}`` for ``n = 1..m_max``.

    Order ``k`` is consistent when ``(-1)^k B_n >= 0`` for every sampled
    ``n`` in ``[k, m_max]``.  Eigenvalues are those of the scaled matrix of
    :func:`_scaled_backward`, so ``tol`` is relative to the size of the terms
    in each alternating sum.
    """
    if d + m_max > model.horizon:
        raise HorizonError(f"degree {d} plus order {m_max} exceeds horizon {model.horizon}")
    rep = OrderReport(m_max, d, tol)
    for n in range(1, m_max + 1):
        ev = np.linalg.eigvalsh(_scaled_backward(model, n, d))
        rep.eigen_ranges[n] = (float(ev[0]), float(ev[-1]))
    for k in range(1, m_max + 1):
        ok = True
        for n in range(k, m_max + 1):
            lo, hi = rep.eigen_ranges[n]
            ok &= lo >= -tol if k % 2 == 0 else hi <= tol
        if ok:
            rep.consistent_orders.append(k)
    return rep


# ---------------------------------------------------------------- closed-form B_n of M_z

def shift_bn_form(mu: DiscMeasure, k: int, f: Polynomial, n: int, tol: float = 1e-10) -> CheckRecord:
    """``sum_j (-1)^j C(n,j) D_{mu,k}(z^j f)`` against its closed form.

    The closed form is ``(-1)^n D_{mu,k-n}(f)`` when ``n <= k`` and
    ``(-1)^k sum_i w_i (1-|z_i|^2)^(n-k) |f(z_i)|^2`` over interior atoms when
    ``n > k``.  The error is measured against ``sum_j C(n,j) D_{mu,k}(z^j f)``.
    """
    terms = [d_measure(f.shift(j), f.shift(j), k, mu).real for j in range(n + 1)]
    lhs = sum((-1) ** j * math.comb(n, j) * t for j, t in enumerate(terms))
    if n <= k:
        rhs = (-1) ** n * d_measure(f, f, k - n, mu).real
    else:
        rhs = (-1) ** k * sum(w * (1 - abs(z) ** 2) ** (n - k) * abs(f(z)) ** 2
                              for z, w in mu.interior_atoms)
    scale = 1.0 + sum(math.comb(n, j) * abs(t) for j, t in enumerate(terms))
    return compare(f"shift_bn[k={k},n={n}]", lhs, rhs, tol, scale=scale, term_scale=scale)


def tuple_bn_value(t: AllowableTuple, f: Polynomial, n: int) -> float:
    """``<B_n(M_z) f, f>`` on the tuple space from closed-form norms."""
    return sum((-1) ** j * math.comb(n, j) * t.norm2(f.shift(j)) for j in range(n + 1))


# ---------------------------------------------------------------- tuple extraction

def top_form_matrix(moments: np.ndarray, m: int, size: int) -> np.ndarray:
    """``D_{mu_m,m}(z^a, z^b) = sum_{i=m-1}^{min(a,b)-1} C(i,m-1) M[a-1-i, b-1-i]``.

    ``moments[k, l]`` is ``int z^k conj(z)^l dmu_m``; needs ``moments`` of size ``size - m``.
    """
    out = np.zeros((size, size), dtype=complex)
    for a in range(m, size):
        for b in range(m, size):
            acc = 0j
            for i in range(m - 1, min(a, b)):
                acc += binomial(i, m - 1) * moments[a - 1 - i, b - 1 - i]
            out[a, b] = acc
    return out


@dataclass
class ExtractedTuple:
    """Fourier data of ``mu_0..mu_{m-1}`` and moments of ``mu_m`` read off a model."""

    m: int
    degree: int
    fourier: np.ndarray  # fourier[j, n] = mu_j hat(n), n = 0..degree
    top_moments: np.ndarray
    min_top_eigenvalue: float
    normalized: bool
    psd: bool

    @property
    def ok(self) -> bool:
        return self.normalized and self.psd

    def distribution(self, j: int) -> CircleDistribution:
        return CircleDistribution({n: self.fourier[j, n] for n in range(self.degree + 1)})

    def norm2(self, p: Polynomial) -> float:
        """``sum_j D_{mu_j,j}(p) + D_{mu_m,m}(p)`` from the extracted data."""
        size = (p.degree or 0) + 1
        if size - 1 > self.degree:
            raise HorizonError("polynomial degree beyond the extracted range")
        c = p.padded(size)
        acc = sum(d_circle(p, p, j, self.distribution(j)) for j in range(self.m))
        acc += c @ top_form_matrix(self.top_moments, self.m, size) @ np.conj(c)
        return float(complex(acc).real)

    def to_dict(self) -> dict:
        from .reports import jsonable

        return {"m": self.m, "degree": self.degree, "ok": self.ok, "normalized": self.normalized,
                "psd": self.psd, "min_top_eigenvalue": self.min_top_eigenvalue,
                "fourier": {str(j): jsonable(self.fourier[j]) for j in range(self.m)},
                "top_moments": jsonable(self.top_moments)}


def extract_tuple(model: OperatorModel, m: int, d: int, tol: float = PSD_TOL) -> ExtractedTuple:
    """``mu_j hat(n) = <beta_j(T) e, T^n e>`` and ``M[k, l] = <beta_m(T) T^k e, T^l e>``."""
    if m < 1:
        raise ValueError("order must be at least 1")
    if m + d > model.horizon:
        raise HorizonError(f"order {m} plus degree {d} exceeds horizon {model.horizon}")
    four = np.zeros((m, d + 1), dtype=complex)
    for j in range(m):
        four[j] = beta_form_matrix(model, j, d)[0]
    top = beta_form_matrix(model, m, d)
    top = 0.5 * (top + top.conj().T)
    lam = float(np.linalg.eigvalsh(top)[0])
    normalized = abs(four[0, 0] - 1) <= 1e-10
    return ExtractedTuple(m, d, four, top, lam, normalized, lam >= -tol)


def s_form_matrix(a: np.ndarray, d: int) -> np.ndarray:
    """``S(A)[a, b] = sum_{j=1}^{min(a,b)} A[a-j, b-j]`` for ``a, b <= d``."""
    if a.shape[0] < d + 1:
        raise HorizonError("form matrix too small for the requested degree")
    out = np.zeros((d + 1, d + 1), dtype=complex)
    for j in range(1, d + 1):
        out[j:, j:] += a[: d + 1 - j, : d + 1 - j]
    return out


def s_form(model: OperatorModel, a: np.ndarray, p: Polynomial, q: Polynomial) -> complex:
    """``sum_{j>=1} <A L^j p(T)e, L^j q(T)e>`` with ``L`` the coefficient backward shift.

    ``a[i, l]`` is ``<A T^i e, T^l e>``.
    """
    d = max(p.degree or 0, q.degree or 0)
    model._need(d)
    acc = 0j
    for j in range(1, d + 1):
        x = p.backward_shift(j).padded(d + 1)
        y = q.backward_shift(j).padded(d + 1)
        acc += x @ a[: d + 1, : d + 1] @ np.conj(y)
    return complex(acc)


def verify_norm_formula(model: OperatorModel, m: int, d: int, rng: np.random.Generator | None = None,
                        n_random: int = 20, tol: float = 1e-8) -> list[CheckRecord]:
    """``||p(T)e||^2`` against the norm assembled from the extracted tuple."""
    ext = extract_tuple(model, m, d)
    psi = model.psi(d)
    polys = [(f"monomial[{n}]", Polynomial.monomial(n)) for n in range(d + 1)]
    if rng is None:
        rng = np.random.default_rng(0)
    for i in range(n_random):
        c = rng.uniform(-1, 1, d + 1) + 1j * rng.uniform(-1, 1, d + 1)
        polys.append((f"random[{i}]", Polynomial(c)))
    out = []
    for label, p in polys:
        c = p.padded(d + 1)
        lhs = float((c @ psi @ np.conj(c)).real)
        out.append(compare(f"norm_formula[m={m}]/{label}", lhs, ext.norm2(p), tol))
    return out


@dataclass
class AnalyticInequalityReport:
    m: int
    degree: int
    tol: float
    min_eigenvalues: dict

    @property
    def passed(self) -> bool:
        return all(v >= -self.tol for v in self.min_eigenvalues.values())

    def to_dict(self) -> dict:
        return {"m": self.m, "degree": self.degree, "tol": self.tol,
                "min_eigenvalues": {str(r): v for r, v in self.min_eigenvalues.items()},
                "verdict": "pass" if self.passed else "fail"}


def verify_analytic_model_inequality(model: OperatorModel, m: int, d: int,
                                     tol: float = PSD_TOL) -> AnalyticInequalityReport:
    """Minimum eigenvalue of ``beta_r(T) - S(beta_{r+1}(T))`` on the orbit slice, ``r = 1..m-1``."""
    if d + m > model.horizon:
        raise HorizonError(f"degree {d} plus order {m} exceeds horizon {model.horizon}")
    mins = {}
    for r in range(1, m):
        diff = beta_form_matrix(model, r, d) - s_form_matrix(beta_form_matrix(model, r + 1, d), d)
        diff = 0.5 * (diff + diff.conj().T)
        mins[r] = float(np.linalg.eigvalsh(diff)[0])
    return AnalyticInequalityReport(m, d, tol, mins)


# ---------------------------------------------------------------- constructions

def weighted_shift(weights: Sequence[float], n: int | None = None) -> OperatorModel:
    """``T e_j = w_j e_{j+1}`` on ``n`` basis vectors; horizon ``n - 1``."""
    w = np.asarray(weights, dtype=float)
    n = w.size + 1 if n is None else int(n)
    if n > 512:
        raise ValueError("at most 512 basis vectors")
    if w.size < n - 1:
        raise ValueError("need n - 1 weights")
    t = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    t[idx + 1, idx] = w[: n - 1]
    return OperatorModel(t, None, n - 1)


def d_alpha_shift(alpha: float, n: int) -> OperatorModel:
    """Weighted shift with ``||T^j e||^2 = (j+1)^alpha``."""
    j = np.arange(n - 1, dtype=float)
    return weighted_shift(((j + 2) / (j + 1)) ** (alpha / 2), n)


def model_from_gram(g: np.ndarray) -> OperatorModel:
    """Realise ``M_z`` on polynomials of degree ``<= D`` from their Gram matrix.

    With ``G = L L^*`` the vectors ``v_a = L[a, :]`` reproduce ``G``; ``T`` maps
    ``v_a`` to ``v_{a+1}`` for ``a < D`` and the horizon is ``D``.
    """
    g = np.asarray(g, dtype=complex)
    size = g.shape[0]
    if abs(g[0, 0] - 1) > 1e-12:
        raise ValueError("Gram matrix is not normalised at the constant function")
    low = np.linalg.cholesky(0.5 * (g + g.conj().T))
    w = low.T  # column a is v_a, upper triangular
    t = np.zeros((size, size), dtype=complex)
    if size > 1:
        # T[:, :D] @ U0 = W[:, 1:], U0 = W[:D, :D] upper triangular
        u0 = w[: size - 1, : size - 1]
        t[:, : size - 1] = solve_triangular(u0.T, w[:, 1:].T, lower=True).T
    e = np.zeros(size, dtype=complex)
    e[0] = 1.0
    return OperatorModel(t, e, size - 1)


def model_from_tuple(t: AllowableTuple, d: int) -> OperatorModel:
    """``M_z`` on the tuple space, exact on ``z^j`` for ``j <= d``."""
    return model_from_gram(gram_matrix(t, d))


@dataclass
class GrowthReport:
    m: int
    ratios: list
    reference: float
    slack: float

    @property
    def bounded(self) -> bool:
        return max(self.ratios) <= self.slack * self.reference

    def to_dict(self) -> dict:
        return {"m": self.m, "sup_ratio": max(self.ratios), "reference": self.reference,
                "slack": self.slack, "bounded": self.bounded}


def growth_check(model: OperatorModel, m: int, n_max: int | None = None, slack: float = 4.0) -> GrowthReport:
    """``||T^n e||^2 / (1+n)^m`` for ``n <= n_max``, compared with its early values.

    The reference is the largest ratio for ``n <= m + 1``; the sequence counts as
    bounded when it never exceeds ``slack`` times the reference.  A diagnostic only.
    """
    n_max = model.horizon if n_max is None else n_max
    psi = model.moments(n_max)
    n = np.arange(n_max + 1)
    ratios = (psi / (1.0 + n) ** m).tolist()
    ref = max(ratios[: min(m + 1, n_max) + 1])
    return GrowthReport(m, ratios, ref, slack)
