"""Polyharmonic Green-Almansi kernels of the unit disc.

``green_k(k, z, zeta)`` evaluates

    G_k(z, zeta) = |zeta - z|^(2(k-1)) log |(1 - z conj(zeta)) / (zeta - z)|^2
                   + sum_{l=1}^{k-1} (-1)^l / l |zeta - z|^(2(k-1-l)) A^l,

with ``A = (1 - |zeta|^2)(1 - |z|^2)``.  Using ``|1 - conj(zeta) z|^2 = |z - zeta|^2 + A``
and ``s = A / |1 - conj(zeta) z|^2`` the same quantity is

    (-1)^(k+1) G_k = A^k / |1 - conj(zeta) z|^2 * sum_{n>=0} s^n / (k C(n+k, k)),

a series of positive terms.  It is used whenever ``s <= 1/2`` (points far apart
relative to their distance from the circle, where the defining formula cancels
badly); the defining formula is used otherwise.

All kernel functions broadcast over numpy arrays of ``z`` and ``zeta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_ORDER",
    "MobiusMap",
    "green_k",
    "positive_green",
    "h_k",
    "u_local",
    "sandwich_bounds",
    "green_recurrence_residual",
    "mobius_transport_residual",
    "fd_laplacian",
    "laplacian_relation_residual",
    "g_ratio_series",
    "g_ratio_tail_bound",
    "g_ratio_direct",
]

MAX_ORDER = 16
_SERIES_SWITCH = 0.5
_SERIES_TERMS = 64  # 0.5**64 / 64 < 1e-21


class PoleError(ValueError):
    """Kernel evaluated at its singular point."""


def _check_order(k: int) -> int:
    k = int(k)
    if not 1 <= k <= MAX_ORDER:
        raise ValueError(f"kernel order k={k} outside [1, {MAX_ORDER}]")
    return k


def _one_minus_abs2(w):
    r = np.abs(w)
    return (1.0 - r) * (1.0 + r)


def _series_coefficients(k: int) -> np.ndarray:
    n = np.arange(_SERIES_TERMS)
    return np.array([1.0 / (k * math.comb(int(j) + k, k)) for j in n])


def positive_green(k: int, z, zeta):
    """``(-1)^(k+1) G_k(z, zeta)``, positive for interior ``z != zeta``.

    For ``k >= 2`` and ``z == zeta`` the continuous extension ``A^(k-1)/(k-1)``
    is returned.
    """
    k = _check_order(k)
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    z, zeta = np.broadcast_arrays(z, zeta)
    d = np.abs(z - zeta) ** 2
    a = _one_minus_abs2(zeta) * _one_minus_abs2(z)
    if k == 1 and np.any(d == 0):
        raise PoleError("G_1(z, zeta) has a logarithmic pole at z = zeta")

    big = d + a  # |1 - conj(zeta) z|^2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(big > 0, a / big, 0.0)
    out = np.empty(d.shape, dtype=float)

    use_series = s <= _SERIES_SWITCH
    if np.any(use_series):
        ss = s[use_series]
        acc = np.zeros_like(ss)
        for c in _series_coefficients(k)[::-1]:
            acc = acc * ss + c
        out[use_series] = a[use_series] ** k / big[use_series] * acc

    rest = ~use_series
    if np.any(rest):
        dr, ar = d[rest], a[rest]
        with np.errstate(divide="ignore", invalid="ignore"):
            logterm = np.where(dr > 0, dr ** (k - 1) * np.log1p(ar / np.where(dr > 0, dr, 1.0)), 0.0)
        g = logterm
        for l in range(1, k):
            g = g + (-1) ** l / l * dr ** (k - 1 - l) * ar**l
        out[rest] = (-1) ** (k + 1) * g

    return out if out.ndim else float(out)


def green_k(k: int, z, zeta):
    """Green-Almansi kernel ``G_k(z, zeta)`` of order ``k`` (``1 <= k <= 16``)."""
    return (-1) ** (k + 1) * positive_green(k, z, zeta)


def h_k(n: int, z, zeta):
    """Companion kernel ``H_n(z, zeta)``.

    ``(-1)^(n-1) (1-|zeta|^2)^n (1-|z|^2)^(n-1) (1-|z zeta|^2) / |1 - conj(z) zeta|^2``
    """
    n = int(n)
    if n < 1:
        raise ValueError("H_n needs n >= 1")
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    den = np.abs(1.0 - np.conj(z) * zeta) ** 2
    if np.any(np.sqrt(den) < 1e-14):
        raise PoleError("H_n evaluated at 1 - conj(z) zeta = 0")
    out = ((-1) ** (n - 1) * _one_minus_abs2(zeta) ** n * _one_minus_abs2(z) ** (n - 1)
           * _one_minus_abs2(z * zeta) / den)
    return out if np.ndim(out) else float(out)


def u_local(k: int, zeta, z, boundary: bool | None = None):
    """Local weight at ``zeta`` evaluated at ``z``.

    Interior ``zeta``: ``(-1)^(k+1) G_k(z, zeta)``.  Boundary ``zeta``:
    ``P(z) (1-|z|^2)^(k-1)`` with the Poisson kernel ``P(z) = (1-|z|^2)/|z-zeta|^2``.
    Normalising constants of the Dirichlet integral are not included.
    """
    from .poly import on_boundary

    k = _check_order(k)
    if boundary is None:
        boundary = on_boundary(zeta)
    if not boundary:
        return positive_green(k, z, zeta)
    z = np.asarray(z, dtype=complex)
    d = np.abs(z - zeta) ** 2
    if np.any(d == 0):
        raise PoleError("boundary weight evaluated at its pole")
    out = _one_minus_abs2(z) ** k / d
    return out if out.ndim else float(out)


def sandwich_bounds(k: int, z, zeta):
    """Lower/upper bounds ``Q/k`` and ``Q/(k-1)`` for ``(-1)^(k+1) G_k`` (``k >= 2``)."""
    if k < 2:
        raise ValueError("the two-sided estimate needs k >= 2")
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    q = (_one_minus_abs2(zeta) * _one_minus_abs2(z)) ** k / np.abs(1.0 - np.conj(zeta) * z) ** 2
    return q / k, q / (k - 1)


def green_recurrence_residual(k: int, z, zeta):
    """``G_k - |z-zeta|^2 G_{k-1} - (-1)^(k-1)/(k-1) (1-|z|^2)^(k-1) (1-|zeta|^2)^(k-1)``."""
    if k < 2:
        raise ValueError("recurrence needs k >= 2")
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    a = _one_minus_abs2(z) * _one_minus_abs2(zeta)
    return (green_k(k, z, zeta) - np.abs(z - zeta) ** 2 * green_k(k - 1, z, zeta)
            - (-1) ** (k - 1) / (k - 1) * a ** (k - 1))


@dataclass(frozen=True)
class MobiusMap:
    """Disc automorphism ``w -> (a - w) / (1 - conj(a) w)``; an involution."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1:
            raise ValueError("Mobius parameter must lie in the open disc")
        object.__setattr__(self, "a", a)

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = (self.a - w) / (1.0 - np.conj(self.a) * w)
        return out if out.ndim else complex(out)

    def transport_factor(self, k: int, z, zeta):
        """``((1-|a|^2) / (|1-conj(a) z| |1-conj(a) zeta|))^(2(k-1))``."""
        a = self.a
        base = (1 - abs(a) ** 2) / (np.abs(1 - np.conj(a) * np.asarray(z))
                                   * np.abs(1 - np.conj(a) * np.asarray(zeta)))
        return base ** (2 * (k - 1))


def mobius_transport_residual(k: int, a, z, zeta):
    """``G_k(phi_a z, phi_a zeta) - factor * G_k(z, zeta)``."""
    phi = a if isinstance(a, MobiusMap) else MobiusMap(a)
    return green_k(k, phi(z), phi(zeta)) - phi.transport_factor(k, z, zeta) * green_k(k, z, zeta)


def fd_laplacian(func, z, h: float = 1e-4):
    """Five-point approximation of ``d^2/dz dz-bar = (1/4)(d_xx + d_yy)``."""
    z = np.asarray(z, dtype=complex)
    lap = func(z + h) + func(z - h) + func(z + 1j * h) + func(z - 1j * h) - 4.0 * func(z)
    return lap / (4.0 * h * h)


def laplacian_relation_residual(k: int, z, zeta, h: float = 1e-4):
    """FD ``Delta_z G_k`` minus ``(k-1)^2 G_{k-1} - (k-1) H_{k-1}``.

    The stencil must stay at distance at least ``10 h`` from ``zeta`` and from
    the unit circle.
    """
    if k < 2:
        raise ValueError("Laplacian relation needs k >= 2")
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(z) > 1 - 10 * h) or np.any(np.abs(z - zeta) < 10 * h):
        raise ValueError("finite-difference stencil too close to the circle or to zeta")
    fd = fd_laplacian(lambda w: green_k(k, w, zeta), z, h)
    exact = (k - 1) ** 2 * green_k(k - 1, z, zeta) - (k - 1) * h_k(k - 1, z, zeta)
    return fd - exact


def g_ratio_series(k: int, x: float, n_terms: int) -> float:
    """Partial sum ``(k-1)! sum_{n<N} x^n / ((n+1)...(n+k))``.

    Approximates ``(-1)^(k+1) G_k(z, 0) / (1-|z|^2)^k`` at ``|z|^2 = 1 - x``;
    see `g_ratio_tail_bound` for the truncation error.
    """
    if k < 2:
        raise ValueError("the ratio series is stated for k >= 2")
    if not 0 < x <= 1:
        raise ValueError("series argument must lie in (0, 1]")
    n = np.arange(n_terms, dtype=float)
    # (k-1)! / ((n+1)...(n+k)) = 1 / (k C(n+k, k)), computed through logs for large n
    logc = (math.lgamma(k) + np.vectorize(math.lgamma)(n + 1) - np.vectorize(math.lgamma)(n + k + 1))
    with np.errstate(divide="ignore"):
        logx = math.log(x) if x < 1 else 0.0
    terms = np.exp(logc + n * logx)
    return float(np.sum(terms[::-1]))


def g_ratio_tail_bound(k: int, x: float, n_terms: int) -> float:
    """Upper bound ``(k-1)! x^N / ((N+1) k! (1-x))`` on the series remainder."""
    if x >= 1:
        return math.inf
    return math.factorial(k - 1) * x**n_terms / ((n_terms + 1) * math.factorial(k) * (1 - x))


def g_ratio_direct(k: int, x: float) -> float:
    """``(-1)^(k+1) G_k(z, 0) / (1-|z|^2)^k`` evaluated from the kernel at ``|z|^2 = 1-x``."""
    z = math.sqrt(1.0 - x)
    return positive_green(k, z, 0.0) / x**k
