"""Hypothesis strategies shared by the unit tests."""

import numpy as np
from hypothesis import strategies as st

from dirkit import Polynomial

# tiny magnitudes are flushed to zero so squared norms never underflow
unit = st.floats(-1.0, 1.0).map(lambda x: x if abs(x) > 1e-6 else 0.0)
coefficient = st.builds(complex, unit, unit)


def polynomials(max_degree: int = 10, min_degree: int = 0):
    return st.lists(coefficient, min_size=min_degree + 1, max_size=max_degree + 1).map(Polynomial)


@st.composite
def disc_points(draw, radius: float = 0.9):
    r = draw(st.floats(0.0, radius))
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


def circle_points():
    return st.floats(0.0, 2 * np.pi).map(lambda t: complex(np.cos(t), np.sin(t)))
