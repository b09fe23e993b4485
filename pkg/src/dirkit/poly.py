"""Dense complex polynomials on the closed unit disc.

Coefficient ``j`` of a :class:`Polynomial` is the Taylor coefficient of
``z**j``.  Instances are immutable; every operation returns a new object.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_DEGREE",
    "DISC_TOL",
    "BOUNDARY_TOL",
    "Polynomial",
    "hardy_inner",
    "as_disc_point",
    "on_boundary",
]

MAX_DEGREE = 512
# closed-disc membership slack and interior/boundary threshold
DISC_TOL = 1e-12
BOUNDARY_TOL = 1e-10


def as_disc_point(z) -> complex:
    """Return ``z`` as a complex number, checking ``|z| <= 1`` up to `DISC_TOL`."""
    z = complex(z)
    if not (abs(z) <= 1.0 + DISC_TOL):
        raise ValueError(f"point {z!r} lies outside the closed unit disc")
    return z


def on_boundary(z) -> bool:
    """True when ``z`` is classified as a point of the unit circle."""
    return abs(complex(z)) >= 1.0 - BOUNDARY_TOL


class Polynomial:
    """Complex polynomial with densely stored coefficients.

    Parameters
    ----------
    coeffs : sequence of complex
        ``coeffs[j]`` multiplies ``z**j``.  Trailing zeros are kept; use
        :meth:`trim` for the canonical form.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] = (0,)):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if c.size - 1 > MAX_DEGREE:
            raise ValueError(f"degree {c.size - 1} exceeds the supported maximum {MAX_DEGREE}")
        c.flags.writeable = False
        self._c = c

    # construction helpers
    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0) -> "Polynomial":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = coeff
        return cls(c)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls((0,))

    @classmethod
    def from_json(cls, data: Sequence[Sequence[float]]) -> "Polynomial":
        """Build from a list of ``[re, im]`` pairs (index = power)."""
        return cls([complex(re, im) for re, im in data])

    def to_json(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self._c]

    # basic queries
    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of the coefficient vector."""
        return self._c

    @property
    def degree(self) -> int | None:
        """Highest index with a nonzero coefficient; ``None`` for the zero polynomial."""
        nz = np.flatnonzero(self._c)
        return int(nz[-1]) if nz.size else None

    @property
    def length(self) -> int:
        return self._c.size

    def is_zero(self) -> bool:
        return self.degree is None

    def trim(self) -> "Polynomial":
        deg = self.degree
        return Polynomial(self._c[: (0 if deg is None else deg) + 1])

    def padded(self, n: int) -> np.ndarray:
        """Coefficient vector zero-padded (or checked) to length ``n``."""
        deg = self.degree
        if deg is not None and deg >= n:
            raise ValueError(f"polynomial of degree {deg} does not fit in length {n}")
        out = np.zeros(n, dtype=complex)
        m = min(n, self._c.size)
        out[:m] = self._c[:m]
        return out

    def __getitem__(self, j: int) -> complex:
        return complex(self._c[j]) if 0 <= j < self._c.size else 0j

    # evaluation
    def __call__(self, z):
        """Horner evaluation; ``z`` may be a scalar or an array."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self._c[::-1]:
            acc = acc * z + c
        return complex(acc) if acc.ndim == 0 else acc

    # calculus and shifts
    def derivative(self, k: int = 1) -> "Polynomial":
        """k-th derivative: coefficient j becomes ``c[j+k] (j+k)!/j!``."""
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        if k == 0:
            return self
        n = self._c.size
        if k >= n:
            return Polynomial.zero()
        j = np.arange(n - k)
        # falling factorial (j+k)!/j! built as a running product to stay exact for moderate k
        fac = np.ones(n - k)
        for i in range(1, k + 1):
            fac = fac * (j + i)
        return Polynomial(self._c[k:] * fac)

    def backward_shift(self, times: int = 1) -> "Polynomial":
        """``L f = (f - f(0)) / z`` applied ``times`` times."""
        if times < 0:
            raise ValueError("shift count must be non-negative")
        if times == 0:
            return self
        if times >= self._c.size:
            return Polynomial.zero()
        return Polynomial(self._c[times:])

    def shift(self, times: int = 1) -> "Polynomial":
        """Multiplication by ``z**times``."""
        if times < 0:
            raise ValueError("shift count must be non-negative")
        return Polynomial(np.concatenate([np.zeros(times, dtype=complex), self._c]))

    def difference_quotient(self, zeta) -> "Polynomial":
        """The polynomial ``q`` with ``f(z) - f(zeta) = (z - zeta) q(z)``.

        Synthetic division; coefficient ``m-1`` of ``q`` equals ``(L^m f)(zeta)``.
        """
        zeta = complex(zeta)
        c = self._c
        n = c.size
        if n == 1:
            return Polynomial.zero()
        q = np.zeros(n - 1, dtype=complex)
        acc = 0j
        for j in range(n - 1, 0, -1):
            acc = acc * zeta + c[j]
            q[j - 1] = acc
        return Polynomial(q)

    def dilate(self, r: float) -> "Polynomial":
        """``f_r(z) = f(r z)`` for ``0 <= r <= 1``."""
        r = float(r)
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"dilation radius {r} outside [0, 1]")
        return Polynomial(self._c * r ** np.arange(self._c.size))

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial((other,))
        n = max(self.length, other.length)
        return Polynomial(self._extended(n) + other._extended(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(np.convolve(self._c, other._c))
        return Polynomial(self._c * complex(other))

    __rmul__ = __mul__

    def _extended(self, n: int) -> np.ndarray:
        out = np.zeros(max(n, self._c.size), dtype=complex)
        out[: self._c.size] = self._c
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(self.length, other.length)
        return bool(np.array_equal(self._extended(n), other._extended(n)))

    def __hash__(self):
        return hash(tuple(self.trim()._c.tolist()))

    def allclose(self, other: "Polynomial", rtol=1e-12, atol=1e-12) -> bool:
        n = max(self.length, other.length)
        return bool(np.allclose(self._extended(n), other._extended(n), rtol=rtol, atol=atol))

    def __repr__(self):
        return f"Polynomial({self._c.tolist()!r})"


def hardy_inner(f: Polynomial, g: Polynomial) -> complex:
    """``sum_j f[j] * conj(g[j])``, the H^2 inner product."""
    n = max(f.length, g.length)
    return complex(np.sum(f._extended(n) * np.conj(g._extended(n))))


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)
