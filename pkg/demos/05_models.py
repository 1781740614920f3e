"""
Mobius and Einstein addition
============================
"""

import numpy as np

from gyrogroups import (
    EinsteinBall,
    MobiusBall,
    MobiusDisk,
    axiom_suite,
    einstein_add,
    gamma_factor,
    mobius_disk_add,
    mobius_disk_gyr,
)

print(mobius_disk_add(0.5, 0.5))
print(einstein_add([0.5, 0, 0], [0.5, 0, 0]))
print(gamma_factor([0.5, 0, 0]), 2 / np.sqrt(3))

a, b = 0.5j, 0.5
coef = mobius_disk_gyr(a, b, 0.5) / 0.5
print("gyration coefficient", coef, "modulus", abs(coef))

# Einstein addition is not commutative; the gyration accounts for the difference
u, v = np.array([0.6, 0.1, 0.0]), np.array([-0.2, 0.7, 0.3])
E = EinsteinBall()
print(E.add(u, v), E.add(v, u))
print(E.gyr(u, v, E.add(v, u)))

for model in (MobiusDisk(), MobiusBall(3), EinsteinBall(3)):
    rep = axiom_suite(model, samples=10_000, seed=0)
    worst = max(rep.max_deviation, key=rep.max_deviation.get)
    print(f"{rep.model:12s} pass={rep.passed}  worst law {worst} {rep.max_deviation[worst]:.1e}")

# closer to the boundary rounding grows: the suites sample inside a capped radius
for fraction in (0.9, 0.99, 0.999):
    rep = axiom_suite(MobiusDisk(), samples=10_000, seed=0, fraction=fraction)
    print(f"norm <= {fraction}: left loop deviation {rep.max_deviation['left_loop']:.1e}")
