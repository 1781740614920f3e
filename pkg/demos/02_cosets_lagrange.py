"""
Subgyrogroups, cosets and Lagrange's count
==========================================
"""

from gyrogroups import (
    cosets_partition,
    enumerate_subgyrogroups,
    equivalence_classes,
    is_L_subgyrogroup,
    k16,
    l_witness,
    lagrange_check,
)

G = k16()
subs = enumerate_subgyrogroups(G)
print(len(subs), "subgyrogroups")

for H in subs:
    tag = "L" if is_L_subgyrogroup(G, H) else " "
    print(f"  {tag} order {H.order:2d}: {H.sorted()}")

# {0,8} is closed, but a gyration moves it
a, h, image = l_witness(G, {0, 8})
print(f"gyr[{a},{h}] sends {{0,8}} to {sorted(image)}")

# so its left cosets overlap ...
dec = cosets_partition(G, {0, 8})
print("cosets of {0,8} partition G:", dec.is_partition, "with", dec.index, "distinct cosets")
for r, cls in zip(dec.representatives, dec.classes):
    print(f"  {r} + H = {sorted(cls)}")

# ... while the equivalence classes of ~_H always partition G
print("~_H classes:", [sorted(c) for c in equivalence_classes(G, {0, 8}).classes])

# for L-subgyrogroups both agree and the index times the order gives |G|
for H in subs:
    if is_L_subgyrogroup(G, H):
        rec = lagrange_check(G, H)
        print(f"|H| = {H.order:2d}  [G:H] = {rec.index:2d}  product = {rec.index * H.order}")
