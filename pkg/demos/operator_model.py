"""Build the shift on a tuple space, read the tuple back off, and probe D_alpha shifts."""

import numpy as np

from dirkit.dirichlet import SIGMA, AllowableTuple, CircleDistribution, DiscMeasure
from dirkit.operators import (classify_order, d_alpha_shift, extract_tuple, model_from_tuple,
                              verify_analytic_model_inequality)

t = AllowableTuple((SIGMA, CircleDistribution({0: 0.7, 1: 0.2})),
                   DiscMeasure(((0.5, 0.5),), CircleDistribution.lebesgue()))
model = model_from_tuple(t, 12)
ext = extract_tuple(model, 2, 10)
print("recovered mu_1 coefficients:", np.round(ext.fourier[1, :3], 12))
print("top moments match:", np.abs(ext.top_moments - t.top.moment_matrix(10)).max())
print("smallest top eigenvalue:", ext.min_top_eigenvalue)

for alpha in (0.5, 1.5, 2.0, 2.5):
    rep = classify_order(d_alpha_shift(alpha, 61), 20, 40)
    print(f"alpha={alpha}: consistent orders {rep.consistent_orders[:4]}, "
          f"B_1 {rep.verdict(1)}, B_2 {rep.verdict(2)}")

# a signed distribution in the middle slot still gives a positive Gram matrix,
# but the difference form exposes it
bad = AllowableTuple((SIGMA, CircleDistribution({0: 0.5, 1: 0.8})), DiscMeasure.lebesgue(5.0))
rep = verify_analytic_model_inequality(model_from_tuple(bad, 10), 2, 8)
print("signed distribution, min eigenvalue:", rep.min_eigenvalues[1])
