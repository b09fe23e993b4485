"""Green kernel orders side by side along a ray, with their two-sided bounds."""

import numpy as np

from dirkit.greens import green_k, sandwich_bounds, u_local

zeta = 0.3 + 0.2j
radii = np.array([0.0, 0.5, 0.9, 0.99, 0.999999])

for k in (1, 2, 4):
    print(f"order {k}")
    for r in radii:
        z = r * np.exp(0.4j)
        w = u_local(k, zeta, z)
        line = f"  |z|={r:<9g} G={green_k(k, z, zeta): .6e}  weight={w:.6e}"
        if k >= 2:
            lo, hi = sandwich_bounds(k, z, zeta)
            line += f"  bounds=[{lo:.3e}, {hi:.3e}]"
        print(line)

# the boundary weight replaces the kernel when the point sits on the circle
print("boundary weight at z=0, zeta=1, k=3:", u_local(3, 1.0, 0.0))
