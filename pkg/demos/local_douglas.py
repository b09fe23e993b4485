"""Local Dirichlet integrals two ways: integrate the kernel-weighted derivative,
or take the Lebesgue form of the difference quotient."""

import numpy as np

from dirkit import Polynomial
from dirkit.dirichlet import d_point_closed, point_form_matrix
from dirkit.quadrature import dirichlet_quadrature

rng = np.random.default_rng(1)
f = Polynomial(rng.random(9) + 1j * rng.random(9))

print(" k   zeta            quadrature          closed form         rel err")
for k in (1, 2, 3, 4):
    for zeta in (0.0, 0.3 + 0.4j, 0.99, np.exp(1.1j)):
        q = dirichlet_quadrature(f, k, zeta)
        c = d_point_closed(f, f, k, zeta).real
        print(f" {k}  {complex(zeta):.3f}  {q.value.real:18.12f}  {c:18.12f}  {abs(q.value.real - c) / (1 + c):.1e}")

# monomials: the form matrix is explicit, and PSD
m = point_form_matrix(2, 0.5, 6)
print("D_{0.5,2}(z^3) =", m[3, 3].real)
print("smallest eigenvalue of the order-2 matrix:", np.linalg.eigvalsh(m).min())
