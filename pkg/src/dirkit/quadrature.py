"""Tensor-product quadrature on the unit disc with normalised area ``dA = dx dy / pi``.

Two node families are used.

Interior centre ``c``: polar coordinates about ``c``,
``z = c + u R(t) e^{it}`` where ``R(t)`` is the distance from ``c`` to the
circle in direction ``t``.  The radial fraction ``u`` is split into graded
panels ``[(i/A)^p, ((i+1)/A)^p]`` with Gauss-Legendre nodes on each; the
angle uses the periodic trapezoid rule.  Grading toward ``u = 0`` resolves a
logarithmic singularity at ``c``.

Boundary pole ``zeta``: ``z = zeta (1 - u R(s) e^{is})`` with
``s`` in ``(-pi/2, pi/2)`` and ``R(s) = 2 cos s``.  In these coordinates
``1 - |z|^2 = R^2 u (1 - u)`` and ``|z - zeta| = R u``, so weights of the
form ``(1-|z|^2)^k / |z - zeta|^2`` times a polynomial become a polynomial
in ``u`` times a trigonometric polynomial of period ``pi`` in ``s``, which the
midpoint rule integrates exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .poly import BOUNDARY_TOL, Polynomial, as_disc_point, on_boundary

__all__ = [
    "QuadratureSpec",
    "DiscIntegrand",
    "QuadratureResult",
    "QuadratureAccuracyError",
    "disc_nodes",
    "integrate_disc",
    "dirichlet_quadrature",
    "dirichlet_quadrature_matrix",
    "hk_quadrature",
]


class QuadratureAccuracyError(RuntimeError):
    """Raised when the half-resolution error estimate exceeds the requested tolerance."""

    def __init__(self, message: str, estimate: float, value=None):
        super().__init__(message)
        self.estimate = estimate
        self.value = value


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 48
    angular_nodes: int = 256
    annuli: int = 8
    exponent: float = 3.0
    center: Optional[complex] = None

    def __post_init__(self):
        if self.radial_nodes < 4:
            raise ValueError("radial_nodes must be at least 4")
        if self.angular_nodes < 8 or self.angular_nodes % 2:
            raise ValueError("angular_nodes must be even and at least 8")
        if self.annuli < 1:
            raise ValueError("annuli must be at least 1")
        if not 1.0 <= self.exponent <= 6.0:
            raise ValueError("grading exponent must lie in [1, 6]")
        if self.center is not None:
            c = as_disc_point(self.center)
            if on_boundary(c):
                raise ValueError("grading centre must be interior; tag boundary poles instead")
            object.__setattr__(self, "center", c)

    def halved(self) -> "QuadratureSpec":
        """Coarser rule used for the error estimate.

        At the minimum node counts the coarse rule equals the fine one, so the
        estimate degenerates to zero there.
        """
        ang = max(8, self.angular_nodes // 2)
        ang += ang % 2
        return replace(self, radial_nodes=max(4, self.radial_nodes // 2), angular_nodes=ang)


@dataclass(frozen=True)
class DiscIntegrand:
    """Integrand with optional singularity tags.

    ``log_at`` marks an interior point carrying an integrable singularity (the
    rule is centred and graded there); ``boundary_pole_at`` marks a point of the
    circle where the integrand may blow up like ``(1-|z|^2)/|z-zeta|^2``.
    """

    func: Callable[[np.ndarray], np.ndarray]
    log_at: Optional[complex] = None
    boundary_pole_at: Optional[complex] = None

    def __post_init__(self):
        if self.log_at is not None and self.boundary_pole_at is not None:
            raise ValueError("an integrand may carry an interior or a boundary tag, not both")
        if self.log_at is not None:
            z = as_disc_point(self.log_at)
            if on_boundary(z):
                raise ValueError("log_at must be an interior point")
            object.__setattr__(self, "log_at", z)
        if self.boundary_pole_at is not None:
            z = complex(self.boundary_pole_at)
            if abs(abs(z) - 1.0) > BOUNDARY_TOL:
                raise ValueError("boundary_pole_at must lie on the unit circle")
            object.__setattr__(self, "boundary_pole_at", z / abs(z))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    nodes: int

    def to_dict(self) -> dict:
        v = self.value
        val = float(v.real) if abs(v.imag) == 0 else [float(v.real), float(v.imag)]
        return {"value": val, "error_estimate": float(self.error_estimate), "nodes": self.nodes}


@lru_cache(maxsize=64)
def _graded_gauss(n: int, panels: int, exponent: float):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = (np.arange(panels + 1) / panels) ** exponent
    u = np.concatenate([0.5 * (b - a) * x + 0.5 * (b + a) for a, b in zip(edges[:-1], edges[1:])])
    wu = np.concatenate([0.5 * (b - a) * w for a, b in zip(edges[:-1], edges[1:])])
    u.flags.writeable = False
    wu.flags.writeable = False
    return u, wu


@lru_cache(maxsize=32)
def _interior_nodes(spec: QuadratureSpec, c: complex):
    u, wu = _graded_gauss(spec.radial_nodes, spec.annuli, spec.exponent)
    m = spec.angular_nodes
    t = 2 * np.pi * np.arange(m) / m
    e = np.exp(1j * t)
    b = (np.conj(c) * e).real
    big_r = -b + np.sqrt(b * b + (1 - abs(c)) * (1 + abs(c)))
    z = c + np.outer(big_r * e, u)
    w = np.outer(big_r**2, u * wu) * (2 * np.pi / m) / np.pi
    z, w = z.ravel(), w.ravel()
    z.flags.writeable = False
    w.flags.writeable = False
    return z, w


@lru_cache(maxsize=32)
def _boundary_nodes(spec: QuadratureSpec, zeta: complex):
    u, wu = _graded_gauss(spec.radial_nodes, spec.annuli, 1.0)
    m = spec.angular_nodes
    s = -np.pi / 2 + np.pi * (np.arange(m) + 0.5) / m
    big_r = 2 * np.cos(s)
    z = zeta * (1 - np.outer(big_r * np.exp(1j * s), u))
    w = np.outer(big_r**2, u * wu) * (np.pi / m) / np.pi
    z, w = z.ravel(), w.ravel()
    z.flags.writeable = False
    w.flags.writeable = False
    return z, w


def disc_nodes(spec: QuadratureSpec, log_at=None, boundary_pole_at=None):
    """Nodes and weights ``(z, w)`` with ``sum(w) == 1`` up to rounding."""
    if boundary_pole_at is not None:
        return _boundary_nodes(spec, complex(boundary_pole_at))
    c = log_at if log_at is not None else spec.center
    return _interior_nodes(spec, 0j if c is None else complex(c))


def _apply(g: DiscIntegrand, spec: QuadratureSpec) -> tuple[complex, int]:
    z, w = disc_nodes(spec, g.log_at, g.boundary_pole_at)
    vals = np.asarray(g.func(z))
    return complex(np.sum(vals * w)), z.size


def integrate_disc(g, spec: QuadratureSpec | None = None, tol: float | None = None) -> QuadratureResult:
    """Integrate ``g`` over the disc against normalised area measure.

    ``g`` may be a :class:`DiscIntegrand` or a plain vectorised callable.  The
    error estimate is the difference from the same rule at half resolution.
    """
    if not isinstance(g, DiscIntegrand):
        g = DiscIntegrand(g)
    spec = spec or QuadratureSpec()
    fine, n = _apply(g, spec)
    coarse, _ = _apply(g, spec.halved())
    est = abs(fine - coarse)
    if tol is not None and est > tol:
        raise QuadratureAccuracyError(
            f"quadrature error estimate {est:.3e} exceeds tolerance {tol:.3e}", est, fine)
    return QuadratureResult(fine, est, n)


def _local_weight(k: int, zeta: complex, boundary: bool):
    from .greens import positive_green

    if boundary:
        def weight(z):
            om = (1 - np.abs(z)) * (1 + np.abs(z))
            return om**k / np.abs(z - zeta) ** 2
        pref = 1.0 / (math.factorial(k) * math.factorial(k - 1))
    else:
        def weight(z):
            return positive_green(k, z, zeta)
        pref = 1.0 / ((1 - abs(zeta) ** 2) ** k * math.factorial(k - 1) ** 2)
    return weight, pref


def _tags(zeta: complex, boundary: bool) -> dict:
    return {"boundary_pole_at": zeta} if boundary else {"log_at": zeta}


def dirichlet_quadrature(f: Polynomial, k: int, zeta, spec: QuadratureSpec | None = None,
                         g: Polynomial | None = None, tol: float | None = None) -> QuadratureResult:
    """Local Dirichlet integral ``D_{zeta,k}(f, g)`` by direct integration of the weight.

    With ``g`` omitted the quadratic form ``D_{zeta,k}(f)`` is returned (real).
    """
    k = int(k)
    if k < 1:
        raise ValueError("local Dirichlet integrals need k >= 1")
    zeta = as_disc_point(zeta)
    boundary = on_boundary(zeta)
    if boundary:
        zeta = zeta / abs(zeta)
    weight, pref = _local_weight(k, zeta, boundary)
    df = f.derivative(k)
    dg = df if g is None else g.derivative(k)

    def integrand(z):
        a = df(z)
        b = a if g is None else dg(z)
        return a * np.conj(b) * weight(z)

    res = integrate_disc(DiscIntegrand(integrand, **_tags(zeta, boundary)), spec)
    value = res.value * pref
    if g is None:
        value = complex(value.real, 0.0)
    est = res.error_estimate * pref
    if tol is not None and est > tol:
        raise QuadratureAccuracyError(
            f"quadrature error estimate {est:.3e} exceeds tolerance {tol:.3e}", est, value)
    return QuadratureResult(value, est, res.nodes)


def _monomial_derivative_table(z: np.ndarray, k: int, degree: int) -> np.ndarray:
    """Column ``j`` holds ``(z^j)^{(k)}`` at the nodes."""
    out = np.zeros((z.size, degree + 1), dtype=complex)
    for j in range(k, degree + 1):
        out[:, j] = math.perm(j, k) * z ** (j - k)
    return out


def dirichlet_quadrature_matrix(k: int, zeta, degree: int, spec: QuadratureSpec | None = None):
    """Matrix ``M[a, b] = D_{zeta,k}(z^a, z^b)`` for ``a, b <= degree`` and its error estimate."""
    k = int(k)
    zeta = as_disc_point(zeta)
    boundary = on_boundary(zeta)
    if boundary:
        zeta = zeta / abs(zeta)
    weight, pref = _local_weight(k, zeta, boundary)
    spec = spec or QuadratureSpec()

    def assemble(sp):
        z, w = disc_nodes(sp, **_tags(zeta, boundary))
        v = _monomial_derivative_table(z, k, degree)
        return pref * ((v * (w * weight(z))[:, None]).T @ np.conj(v))

    fine = assemble(spec)
    est = float(np.max(np.abs(fine - assemble(spec.halved()))))
    return fine, est


def hk_quadrature(m: int, n: int, k: int, zeta, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(-1)^(k-1) * int (z^m)^{(k)} conj((z^n)^{(k)}) H_k(z, zeta) dA``."""
    from .greens import h_k

    zeta = as_disc_point(zeta)
    if on_boundary(zeta):
        raise ValueError("the companion-kernel integral is taken at interior points")
    pm = math.perm(m, k)
    pn = math.perm(n, k)

    def integrand(z):
        return pm * z ** (m - k) * np.conj(pn * z ** (n - k)) * h_k(k, z, zeta)

    spec = spec or QuadratureSpec()
    spec = replace(spec, center=zeta)
    res = integrate_disc(DiscIntegrand(integrand), spec)
    return QuadratureResult((-1) ** (k - 1) * res.value, res.error_estimate, res.nodes)
