"""
A tour of the 16-element gyrogroup K16
======================================

Load the built-in table, verify it, and look at the one nonidentity
gyration that repairs associativity.
"""

import numpy as np

from gyrogroups import check_identities, gyration_table, gyrocommutativity_witness, k16, verify_axioms

G = k16()
print(G.entries)

# every axiom is checked exhaustively; the right-hand counterparts come along as diagnostics
report = verify_axioms(G.entries)
print("passed:", report.passed)
print("checked:", ", ".join(report.checked))

# the operation is not associative ...
a, b, c = 4, 8, 8
print(f"{a}+({b}+{c}) = {G.add(a, G.add(b, c))},  ({a}+{b})+{c} = {G.add(G.add(a, b), c)}")

# ... but it is associative up to the gyration gyr[a,b]
print(f"({a}+{b}) + gyr[{a},{b}]{c} = {G.add(G.add(a, b), G.gyr(a, b, c))}")

gyrations = {g for row in gyration_table(G) for g in row}
for g in sorted(gyrations, key=lambda p: p.images):
    print("gyration:", g.cycle_notation())

# which pairs (a, b) produce the nonidentity gyration
mask = np.array([[not g.is_identity() for g in row] for row in gyration_table(G)])
print(mask.astype(int))

# the derived operations
print("4 [+] 8 =", G.coadd(4, 8))
print("solve 4 + x = 15: x =", G.solve_left(4, 15))
print("solve x + 4 = 15: x =", G.solve_right(4, 15))

found = check_identities(G)
print("identity laws with violations:", [law for law, w in found.items() if w] or "none")
print("gyrocommutativity fails at", gyrocommutativity_witness(G))
