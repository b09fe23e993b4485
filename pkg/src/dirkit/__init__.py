"""Numerics for higher-order weighted Dirichlet-type spaces.

Submodules: :mod:`~dirkit.poly` (polynomials), :mod:`~dirkit.greens`
(Green-Almansi kernels), :mod:`~dirkit.quadrature` (disc quadrature),
:mod:`~dirkit.dirichlet` (closed-form forms and identities) and
:mod:`~dirkit.operators` (cyclic operator models).
"""

from .dirichlet import (SIGMA, AllowableTuple, CircleDistribution, DiscMeasure, d_circle, d_measure,
                        d_point_closed, d_sigma, gram_matrix, tuple_norm)
from .greens import MobiusMap, green_k, h_k, u_local
from .operators import OperatorModel, classify_order, d_alpha_shift, extract_tuple, model_from_tuple
from .poly import Polynomial, hardy_inner
from .quadrature import DiscIntegrand, QuadratureSpec, dirichlet_quadrature, integrate_disc

__version__ = "0.1.0"

__all__ = [
    "SIGMA", "AllowableTuple", "CircleDistribution", "DiscMeasure", "d_circle", "d_measure",
    "d_point_closed", "d_sigma", "gram_matrix", "tuple_norm", "MobiusMap", "green_k", "h_k",
    "u_local", "OperatorModel", "classify_order", "d_alpha_shift", "extract_tuple",
    "model_from_tuple", "Polynomial", "hardy_inner", "DiscIntegrand", "QuadratureSpec",
    "dirichlet_quadrature", "integrate_disc",
]
