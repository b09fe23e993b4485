"""Closed-form weighted Dirichlet forms and the identities they satisfy.

All forms are sesquilinear, linear in the first slot:
``form(f, g) = sum_{a,b} f[a] conj(g[b]) M[a, b]`` with ``M`` the matrix of the
form on monomials.

* circle distributions: ``M[a, b] = C(min(a, b), k) mu_hat(b - a)`` for ``a, b >= k``;
* a point ``zeta`` of the closed disc (``k >= 1``):
  ``M[a, b] = sum_{i=k-1}^{min(a,b)-1} C(i, k-1) zeta^(a-1-i) conj(zeta)^(b-1-i)``;
* order zero at a point: ``M[a, b] = zeta^a conj(zeta)^b``.

``d_point_closed`` does not use the point matrix; it applies the order ``k-1``
Lebesgue form to difference quotients, so the two routes can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .poly import DISC_TOL, Polynomial, as_disc_point, binomial, on_boundary

__all__ = [
    "PSD_TOL",
    "SIGMA",
    "HermitianViolationError",
    "CircleDistribution",
    "DiscMeasure",
    "AllowableTuple",
    "circle_form_matrix",
    "point_form_matrix",
    "point_form_recursive",
    "hk_closed_form",
    "measure_form_matrix",
    "d_sigma",
    "d_circle",
    "d_point_closed",
    "d_point_matrix",
    "measure_zero",
    "d_measure",
    "tuple_form",
    "tuple_norm",
    "gram_matrix",
    "allowability_witness",
    "sum_lemma_check",
    "sum_lemma_sides",
    "magic_identity_check",
    "magic_identity_sides",
    "real_form",
    "verify_local_douglas",
    "verify_hk_integral",
    "verify_difference_formula",
    "verify_one_step_up",
    "verify_dilation_bound",
    "backward_shift_monotonicity",
    "multiplication_monotonicity",
    "boundedness_check",
    "annihilation_check",
]

PSD_TOL = 1e-10


class HermitianViolationError(ValueError):
    """A quadratic form that should be real came out with a sizeable imaginary part."""


def _coef_vectors(*polys: Polynomial) -> list[np.ndarray]:
    n = max(p.length for p in polys)
    return [p.padded(n) for p in polys]


class CircleDistribution:
    """Distribution on the unit circle given by its Fourier coefficients.

    ``mu_hat(n) = mu(conj(zeta)^n)``.  Coefficients come from an explicit finite
    table plus any number of point masses (``mass * conj(zeta)^n``).  When
    ``hermitian`` is set the table is completed by ``mu_hat(-n) = conj(mu_hat(n))``.
    """

    def __init__(self, fourier: Mapping[int, complex] | None = None,
                 atoms: Iterable[tuple[complex, float]] = (), hermitian: bool = True):
        table: dict[int, complex] = {}
        for n, c in (fourier or {}).items():
            table[int(n)] = complex(c)
        if hermitian:
            for n, c in list(table.items()):
                other = table.get(-n)
                if other is None:
                    table[-n] = c.conjugate()
                elif abs(other - c.conjugate()) > 1e-12 * (1 + abs(c)):
                    raise ValueError(f"coefficients at {n} and {-n} are not conjugate")
            if 0 in table and abs(table[0].imag) > 1e-12:
                raise ValueError("hermitian distribution needs a real zeroth coefficient")
        pts = []
        for z, w in atoms:
            z = complex(z)
            if abs(abs(z) - 1) > 1e-10:
                raise ValueError("circle atoms must lie on the unit circle")
            pts.append((z / abs(z), float(w)))
        self._table = table
        self._atoms = tuple(pts)
        self.hermitian = bool(hermitian)

    @classmethod
    def lebesgue(cls, mass: float = 1.0) -> "CircleDistribution":
        """``mass`` times normalised arc length."""
        return cls({0: mass})

    @classmethod
    def point_mass(cls, zeta, mass: float = 1.0) -> "CircleDistribution":
        return cls(atoms=[(zeta, mass)])

    @classmethod
    def zero(cls) -> "CircleDistribution":
        return cls({})

    @property
    def atoms(self) -> tuple[tuple[complex, float], ...]:
        return self._atoms

    def coef(self, n: int) -> complex:
        c = self._table.get(int(n), 0j)
        for z, w in self._atoms:
            c += w * z.conjugate() ** n
        return c

    __call__ = coef

    def coef_array(self, lags: np.ndarray) -> np.ndarray:
        lags = np.asarray(lags, dtype=int)
        out = np.zeros(lags.shape, dtype=complex)
        for n, c in self._table.items():
            out[lags == n] += c
        for z, w in self._atoms:
            out += w * np.conj(z) ** lags.astype(float)
        return out

    @property
    def total_mass(self) -> float:
        return float(self.coef(0).real)

    def toeplitz(self, d: int) -> np.ndarray:
        """``[mu_hat(l - j)]_{j,l=0..d}``."""
        idx = np.arange(d + 1)
        return self.coef_array(idx[None, :] - idx[:, None])

    def min_toeplitz_eigenvalue(self, d: int) -> float:
        return float(np.linalg.eigvalsh(self.toeplitz(d))[0])

    def is_positive(self, d: int, tol: float = PSD_TOL) -> bool:
        """Finite-degree positivity witness: the Toeplitz matrix is PSD."""
        return self.min_toeplitz_eigenvalue(d) >= -tol

    def scaled(self, c: float) -> "CircleDistribution":
        return CircleDistribution({n: c * v for n, v in self._table.items()},
                                  [(z, c * w) for z, w in self._atoms], hermitian=self.hermitian)

    def __add__(self, other: "CircleDistribution") -> "CircleDistribution":
        table = dict(self._table)
        for n, v in other._table.items():
            table[n] = table.get(n, 0j) + v
        return CircleDistribution(table, self._atoms + other._atoms,
                                  hermitian=self.hermitian and other.hermitian)

    def to_json(self) -> dict:
        table = {n: c for n, c in self._table.items() if c != 0}
        if table and self._atoms:
            return {"kind": "sum", "parts": [
                CircleDistribution(table, hermitian=self.hermitian).to_json(),
                CircleDistribution(atoms=self._atoms).to_json()]}
        if self._atoms:
            return {"kind": "atoms", "points": [
                {"theta": float(np.angle(z)), "mass": w} for z, w in self._atoms]}
        if not table:
            return {"kind": "zero"}
        if set(table) == {0}:
            return {"kind": "lebesgue", "mass": float(table[0].real)}
        keep = sorted(n for n in table if n >= 0) if self.hermitian else sorted(table)
        return {"kind": "fourier", "hermitian": self.hermitian,
                "coeffs": {str(n): [table[n].real, table[n].imag] for n in keep}}

    @classmethod
    def from_json(cls, data: Mapping) -> "CircleDistribution":
        kind = data.get("kind")
        if kind == "lebesgue":
            return cls.lebesgue(float(data.get("mass", 1.0)))
        if kind == "atoms":
            return cls(atoms=[(np.exp(1j * float(p["theta"])), float(p["mass"]))
                              for p in data["points"]])
        if kind == "fourier":
            coeffs = {int(n): complex(*v) if isinstance(v, (list, tuple)) else complex(v)
                      for n, v in data["coeffs"].items()}
            return cls(coeffs, hermitian=bool(data.get("hermitian", True)))
        if kind == "sum":
            out = cls.zero()
            for part in data["parts"]:
                out = out + cls.from_json(part)
            return out
        if kind in (None, "zero"):
            return cls.zero()
        raise ValueError(f"unknown circle distribution kind {kind!r}")

    def __repr__(self):
        return f"CircleDistribution(table={self._table!r}, atoms={self._atoms!r})"


SIGMA = CircleDistribution.lebesgue()


@dataclass(frozen=True)
class DiscMeasure:
    """Finite positive measure on the closed disc: point masses plus a circle part."""

    atoms: tuple[tuple[complex, float], ...] = ()
    circle: CircleDistribution = field(default_factory=CircleDistribution.zero)

    def __post_init__(self):
        clean = []
        for z, w in self.atoms:
            z = as_disc_point(z)
            w = float(w)
            if not w > 0:
                raise ValueError("atom masses must be positive")
            if on_boundary(z):
                z = z / abs(z)
            clean.append((z, w))
        object.__setattr__(self, "atoms", tuple(clean))

    @classmethod
    def point(cls, zeta, mass: float = 1.0) -> "DiscMeasure":
        return cls(((zeta, mass),))

    @classmethod
    def lebesgue(cls, mass: float = 1.0) -> "DiscMeasure":
        return cls((), CircleDistribution.lebesgue(mass))

    @classmethod
    def zero(cls) -> "DiscMeasure":
        return cls()

    @property
    def interior_atoms(self):
        return tuple((z, w) for z, w in self.atoms if not on_boundary(z))

    @property
    def boundary_atoms(self):
        return tuple((z, w) for z, w in self.atoms if on_boundary(z))

    @property
    def circle_mass(self) -> float:
        """``mu(T)``: boundary atoms plus the circle part."""
        return sum(w for _, w in self.boundary_atoms) + self.circle.total_mass

    @property
    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms) + self.circle.total_mass

    def boundary_distribution(self) -> CircleDistribution:
        """Everything living on the circle, as one distribution."""
        return self.circle + CircleDistribution(atoms=self.boundary_atoms)

    def __add__(self, other: "DiscMeasure") -> "DiscMeasure":
        return DiscMeasure(self.atoms + other.atoms, self.circle + other.circle)

    def scaled(self, c: float) -> "DiscMeasure":
        return DiscMeasure(tuple((z, c * w) for z, w in self.atoms), self.circle.scaled(c))

    def moment_matrix(self, d: int) -> np.ndarray:
        """``M[a, b] = int z^a conj(z)^b dmu`` for ``a, b <= d``."""
        idx = np.arange(d + 1)
        out = self.circle.coef_array(idx[None, :] - idx[:, None])
        for z, w in self.atoms:
            v = z ** idx
            out = out + w * np.outer(v, np.conj(v))
        return out

    def to_json(self) -> dict:
        return {"atoms": [{"z": [z.real, z.imag], "mass": w} for z, w in self.atoms],
                "circle": self.circle.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "DiscMeasure":
        atoms = tuple((complex(*a["z"]), float(a["mass"])) for a in data.get("atoms", []))
        circ = data.get("circle")
        circle = CircleDistribution.from_json(circ) if circ else CircleDistribution.zero()
        return cls(atoms, circle)


# ---------------------------------------------------------------- form matrices

def _binom_table(size: int, k: int) -> np.ndarray:
    return np.array([float(binomial(i, k)) for i in range(size)])


def circle_form_matrix(k: int, mu: CircleDistribution, size: int) -> np.ndarray:
    """Matrix of ``D_{mu,k}`` on ``1, z, ..., z^(size-1)``."""
    idx = np.arange(size)
    lo = np.minimum(idx[:, None], idx[None, :])
    binom = _binom_table(size, k)[lo]
    return binom * mu.coef_array(idx[None, :] - idx[:, None])


def point_form_matrix(k: int, zeta, size: int) -> np.ndarray:
    """Matrix of ``D_{zeta,k}`` on monomials from the explicit monomial formula."""
    zeta = as_disc_point(zeta)
    out = np.zeros((size, size), dtype=complex)
    if k == 0:
        v = zeta ** np.arange(size)
        return np.outer(v, np.conj(v))
    zc = zeta.conjugate()
    for a in range(k, size):
        for b in range(k, size):
            acc = 0j
            for i in range(k - 1, min(a, b)):
                acc += binomial(i, k - 1) * zeta ** (a - 1 - i) * zc ** (b - 1 - i)
            out[a, b] = acc
    return out


def point_form_recursive(k: int, zeta, m: int, n: int) -> complex:
    """``D_{zeta,k}(z^m, z^n)`` for interior ``zeta`` by recursion in ``k``.

    Integrating ``|(z^m)^{(k)}|^2`` against the Laplacian relation between
    consecutive Green kernels and the companion-kernel integral gives
    ``D_k = (conj(zeta)^(n-m) C(m, k-1) - D_{k-1}) / (1 - |zeta|^2)`` for ``m <= n``,
    started from ``D_0 = zeta^m conj(zeta)^n``.
    """
    zeta = as_disc_point(zeta)
    if on_boundary(zeta):
        raise ValueError("the recursion divides by 1 - |zeta|^2 and needs an interior point")
    if m > n:
        return point_form_recursive(k, zeta, n, m).conjugate()
    if m < k:
        return 0j
    om = (1 - abs(zeta)) * (1 + abs(zeta))
    phase = zeta.conjugate() ** (n - m)
    d = zeta**m * zeta.conjugate() ** n
    for j in range(1, k + 1):
        d = (phase * binomial(m, j - 1) - d) / om
    return d


def hk_closed_form(m: int, n: int, k: int, zeta) -> complex:
    """``(1-|zeta|^2)^k conj(zeta)^(n-m) m! (k-1)! / (m-k)!`` for ``k <= m <= n``."""
    if not k <= m <= n:
        raise ValueError("need k <= m <= n")
    zeta = complex(zeta)
    return ((1 - abs(zeta) ** 2) ** k * zeta.conjugate() ** (n - m)
            * math.factorial(m) * math.factorial(k - 1) / math.factorial(m - k))


def measure_form_matrix(k: int, mu: DiscMeasure, size: int) -> np.ndarray:
    """Matrix of ``D_{mu,k}`` (``k >= 0``) on monomials of degree below ``size``."""
    out = circle_form_matrix(k, mu.circle, size)
    for z, w in mu.atoms:
        out = out + w * point_form_matrix(k, z, size)
    return out


# ---------------------------------------------------------------- forms

def d_sigma(f: Polynomial, g: Polynomial, k: int) -> complex:
    """``sum_{j>=k} C(j, k) f[j] conj(g[j])``."""
    a, b = _coef_vectors(f, g)
    if k >= a.size:
        return 0j
    binom = _binom_table(a.size, k)
    return complex(np.sum(binom[k:] * a[k:] * np.conj(b[k:])))


def d_circle(f: Polynomial, g: Polynomial, k: int, mu: CircleDistribution) -> complex:
    a, b = _coef_vectors(f, g)
    return complex(a @ circle_form_matrix(k, mu, a.size) @ np.conj(b))


def d_point_closed(f: Polynomial, g: Polynomial, k: int, zeta) -> complex:
    """``D_{zeta,k}(f, g)`` through difference quotients at ``zeta``."""
    if k < 1:
        raise ValueError("local forms need k >= 1; use measure_zero for order zero")
    zeta = as_disc_point(zeta)
    return d_sigma(f.difference_quotient(zeta), g.difference_quotient(zeta), k - 1)


def d_point_matrix(f: Polynomial, g: Polynomial, k: int, zeta) -> complex:
    """Same form as :func:`d_point_closed`, assembled from the monomial matrix."""
    a, b = _coef_vectors(f, g)
    return complex(a @ point_form_matrix(k, zeta, a.size) @ np.conj(b))


def measure_zero(f: Polynomial, g: Polynomial, mu: DiscMeasure) -> complex:
    """Order-zero form: ``sum_i w_i f(z_i) conj(g(z_i))`` plus the circle part."""
    acc = d_circle(f, g, 0, mu.circle)
    for z, w in mu.atoms:
        acc += w * f(z) * np.conj(g(z))
    return complex(acc)


def d_measure(f: Polynomial, g: Polynomial, k: int, mu) -> complex:
    """``D_{mu,k}(f, g)`` for a :class:`DiscMeasure` or a :class:`CircleDistribution`."""
    if isinstance(mu, CircleDistribution):
        return d_circle(f, g, k, mu)
    if k == 0:
        return measure_zero(f, g, mu)
    acc = d_circle(f, g, k, mu.circle)
    for z, w in mu.atoms:
        acc += w * d_point_closed(f, g, k, z)
    return complex(acc)


def real_form(value: complex, what: str = "quadratic form") -> float:
    if abs(value.imag) > 1e-10 * (1 + abs(value.real)):
        raise HermitianViolationError(f"{what} has imaginary part {value.imag:.3e}")
    return float(value.real)


# ---------------------------------------------------------------- tuples

@dataclass(frozen=True)
class AllowableTuple:
    """``m`` circle distributions ``mu_0..mu_{m-1}`` and a disc measure ``mu_m``."""

    distributions: tuple[CircleDistribution, ...]
    top: DiscMeasure

    def __post_init__(self):
        object.__setattr__(self, "distributions", tuple(self.distributions))
        if len(self.distributions) < 1:
            raise ValueError("a tuple needs m >= 1 circle distributions")
        if abs(self.distributions[0].coef(0) - 1) > 1e-12:
            raise ValueError("tuple is not normalised: mu_0 hat(0) must equal 1")

    @property
    def m(self) -> int:
        return len(self.distributions)

    def form(self, f: Polynomial, g: Polynomial) -> complex:
        return tuple_form(f, g, self)

    def norm2(self, f: Polynomial) -> float:
        return tuple_norm(f, self)

    def to_json(self) -> dict:
        return {"m": self.m, "distributions": [d.to_json() for d in self.distributions],
                "top": self.top.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "AllowableTuple":
        dists = tuple(CircleDistribution.from_json(d) for d in data["distributions"])
        if "m" in data and int(data["m"]) != len(dists):
            raise ValueError("'m' does not match the number of distributions")
        return cls(dists, DiscMeasure.from_json(data.get("top", {})))


def tuple_form(f: Polynomial, g: Polynomial, t: AllowableTuple) -> complex:
    acc = 0j
    for j, mu in enumerate(t.distributions):
        acc += d_circle(f, g, j, mu)
    return acc + d_measure(f, g, t.m, t.top)


def tuple_norm(f: Polynomial, t: AllowableTuple) -> float:
    """``sum_{j<m} D_{mu_j,j}(f) + D_{mu_m,m}(f)``."""
    return real_form(tuple_form(f, f, t), "tuple norm")


def gram_matrix(t: AllowableTuple, d: int) -> np.ndarray:
    """``G[a, b] = <z^a, z^b>`` for ``a, b <= d``."""
    if d > 256:
        raise ValueError("working degree capped at 256")
    size = d + 1
    g = np.zeros((size, size), dtype=complex)
    for j, mu in enumerate(t.distributions):
        g += circle_form_matrix(j, mu, size)
    g += measure_form_matrix(t.m, t.top, size)
    return g


@dataclass(frozen=True)
class AllowabilityReport:
    degree: int
    min_eigenvalue: float
    psd: bool
    shift_bound: float

    def to_dict(self) -> dict:
        return {"degree": self.degree, "min_eigenvalue": self.min_eigenvalue, "psd": self.psd,
                "shift_bound": self.shift_bound}


def allowability_witness(t: AllowableTuple, d: int = 24, tol: float = PSD_TOL) -> AllowabilityReport:
    """PSD check of the Gram matrix and the largest ``||z f||^2 / ||f||^2`` over degree ``<= d``."""
    g = gram_matrix(t, d + 1)
    g0 = g[: d + 1, : d + 1]
    lam = float(np.linalg.eigvalsh(g0)[0])
    psd = lam >= -tol
    bound = math.inf
    if lam > tol:
        from scipy.linalg import eigh

        bound = float(eigh(g[1:, 1:], g0, eigvals_only=True)[-1])
    return AllowabilityReport(d, lam, psd, bound)


# ---------------------------------------------------------------- exact identities

def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def sum_lemma_sides(m: int, k: int, r) -> tuple[Fraction, Fraction]:
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    r = _as_fraction(r)
    lhs = sum(math.comb(l, k) * r ** (m - l) for l in range(k, m + 1))
    lhs += (1 - r) * sum(math.comb(l, k + 1) * r ** (m - l) for l in range(k + 1, m + 1))
    return Fraction(lhs), Fraction(math.comb(m + 1, k + 1))


def sum_lemma_check(m: int, k: int, r) -> bool:
    """Exact check of ``sum_l C(l,k) r^(m-l) + (1-r) sum_l C(l,k+1) r^(m-l) = C(m+1,k+1)``."""
    lhs, rhs = sum_lemma_sides(m, k, r)
    return lhs == rhs


def magic_identity_sides(n: int, m: int, x) -> tuple[Fraction, Fraction]:
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    x = _as_fraction(x)
    lhs = sum(math.comb(n, j + m + 1) * (x - 1) ** j for j in range(n - m))
    rhs = sum(math.comb(n - j - 1, m) * x**j for j in range(n - m))
    return Fraction(lhs), Fraction(rhs)


def magic_identity_check(n: int, m: int, x) -> bool:
    """Exact check of ``sum_j C(n, j+m+1)(x-1)^j = sum_j C(n-j-1, m) x^j``."""
    lhs, rhs = magic_identity_sides(n, m, x)
    return lhs == rhs


# ---------------------------------------------------------------- verification

def verify_local_douglas(f: Polynomial, k: int, zeta, spec=None, tol: float | None = None):
    """Quadrature of the weighted integral against the difference-quotient closed form.

    ``tol`` defaults to ``1e-8`` for ``k >= 2`` and ``1e-4`` for ``k = 1``.
    """
    from .quadrature import dirichlet_quadrature
    from .reports import compare

    if tol is None:
        tol = 1e-4 if k == 1 else 1e-8
    q = dirichlet_quadrature(f, k, zeta, spec)
    rhs = real_form(d_point_closed(f, f, k, zeta))
    return compare(f"local_douglas[k={k}]", q.value.real, rhs, tol,
                   zeta=complex(zeta), error_estimate=q.error_estimate)


def verify_hk_integral(m: int, n: int, k: int, zeta, spec=None, tol: float = 1e-8):
    """Companion-kernel integral of ``(z^m)^{(k)} conj((z^n)^{(k)})`` against its closed form."""
    from .quadrature import hk_quadrature
    from .reports import compare

    q = hk_quadrature(m, n, k, zeta, spec)
    rhs = hk_closed_form(m, n, k, zeta)
    return compare(f"hk_integral[k={k},m={m},n={n}]", q.value, rhs, tol,
                   zeta=complex(zeta), error_estimate=q.error_estimate)


def _mu_label(mu) -> str:
    return "circle" if isinstance(mu, CircleDistribution) else "measure"


def verify_difference_formula(f: Polynomial, k: int, mu, tol: float = 1e-10):
    """``D_k(z f) - D_k(f) = D_{k-1}(f)``."""
    from .reports import compare

    if k < 1:
        raise ValueError("difference formula needs k >= 1")
    lhs = d_measure(f.shift(1), f.shift(1), k, mu) - d_measure(f, f, k, mu)
    rhs = d_measure(f, f, k - 1, mu)
    return compare(f"difference_formula[k={k}]", lhs.real, rhs.real, tol)


def verify_one_step_up(f: Polynomial, k: int, mu, tol: float = 1e-10):
    """``sum_{j>=1} D_k(L^j f) = D_{k+1}(f)`` (finite for polynomials)."""
    from .reports import compare

    deg = f.degree or 0
    lhs = sum(d_measure(f.backward_shift(j), f.backward_shift(j), k, mu) for j in range(1, deg + 1))
    rhs = d_measure(f, f, k + 1, mu)
    return compare(f"one_step_up[k={k}]", complex(lhs).real, rhs.real, tol)


def verify_dilation_bound(f: Polynomial, k: int, mu, r: float, tol: float = 1e-10):
    """``D_k(f_r) <= 2 D_k(f)``; the observed ratio is recorded in the details."""
    from .reports import bound

    a = d_measure(f.dilate(r), f.dilate(r), k, mu).real
    b = d_measure(f, f, k, mu).real
    ratio = a / b if b > 0 else (1.0 if a <= 0 else math.inf)
    return bound(f"dilation[k={k}]", a, 2 * b, tol, r=r, observed_ratio=ratio)


def backward_shift_monotonicity(f: Polynomial, k: int, mu, tol: float = 1e-12):
    """``D_k(L^j f)`` is non-increasing in ``j`` and vanishes once ``j > deg f``."""
    from .reports import CheckRecord

    deg = f.degree or 0
    seq = [d_measure(f.backward_shift(j), f.backward_shift(j), k, mu).real for j in range(deg + 2)]
    worst = max([seq[j + 1] - seq[j] for j in range(len(seq) - 1)] + [0.0])
    tail = abs(seq[-1])
    ok = worst <= tol * (1 + abs(seq[0])) and tail == 0.0
    return CheckRecord(f"backward_shift_monotone[k={k}]", seq[0], seq[-1], worst, worst, tol, ok,
                       {"sequence": seq})


def multiplication_monotonicity(f: Polynomial, k: int, mu, tol: float = 1e-12):
    """``D_k(f) <= D_k(z f)``."""
    from .reports import bound

    a = d_measure(f, f, k, mu).real
    b = d_measure(f.shift(1), f.shift(1), k, mu).real
    return bound(f"multiplication_monotone[k={k}]", a, b, tol * (1 + abs(b)))


def boundedness_check(f: Polynomial, k: int, mu: DiscMeasure, tol: float = 1e-10,
                      form: str = "corrected"):
    """Upper bound for ``D_k(z f)``.

    ``form="corrected"`` tests ``D_k(z f) <= D_1(f) + k D_k(f)``, which follows
    from the difference formula.  ``form="stated"`` tests
    ``D_k(z f) <= mu(T) D_{sigma,1}(f) + k D_k(f)``, which fails for some inputs
    (for instance a unit mass at 1, ``k = 2``, ``f = z + z^2``).
    """
    from .reports import bound

    lhs = d_measure(f.shift(1), f.shift(1), k, mu).real
    own = d_measure(f, f, k, mu).real
    if form == "corrected":
        rhs = d_measure(f, f, 1, mu).real + k * own
    elif form == "stated":
        circle_mass = mu.circle_mass if isinstance(mu, DiscMeasure) else mu.total_mass
        rhs = circle_mass * d_sigma(f, f, 1).real + k * own
    else:
        raise ValueError("form must be 'corrected' or 'stated'")
    return bound(f"boundedness_{form}[k={k}]", lhs, rhs, tol)


def annihilation_check(f: Polynomial, k: int, n: int, mu: CircleDistribution, tol: float = 1e-10):
    """``sum_j (-1)^j C(n,j) D_{mu,k}(z^j f) = 0`` for ``n > k`` and a circle distribution.

    The error is measured against ``sum_j C(n,j) |D_{mu,k}(z^j f)|``.
    """
    from .reports import compare

    if n <= k:
        raise ValueError("annihilation holds for n > k")
    terms = [d_circle(f.shift(j), f.shift(j), k, mu) for j in range(n + 1)]
    total = sum((-1) ** j * math.comb(n, j) * t for j, t in enumerate(terms))
    scale = 1.0 + sum(math.comb(n, j) * abs(t) for j, t in enumerate(terms))
    return compare(f"annihilation[k={k},n={n}]", total, 0.0, tol, scale=scale)
