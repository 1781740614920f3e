"""
Quotients and the isomorphism theorems on K16
=============================================

Normal subgyrogroups are kernels of homomorphisms; here they are found by
a direct test and compared with the kernels of every endomorphism.
"""

from gyrogroups import (
    enumerate_homomorphisms,
    first_iso_check,
    k16,
    kernel,
    lattice_check,
    normal_subgyrogroups,
    normality_report,
    quotient,
    second_iso_check,
    third_iso_check,
)

G = k16()
normals = normal_subgyrogroups(G)
print("normal:", [N.sorted() for N in normals])

homs = enumerate_homomorphisms(G, G)
kernels = {kernel(f).members for f in homs}
print(len(homs), "endomorphisms with", len(kernels), "distinct kernels")
print("same family:", kernels == {N.members for N in normals})

# an L-subgyrogroup that is still not normal
rep = normality_report(G, {0, 1, 8, 9})
print("{0,1,8,9} normal:", rep.normal, "- fails at", rep.failed_stage, "witness", rep.witness)

Q = quotient(G, {0, 1, 2, 3})
print("G/{0,1,2,3} has order", Q.order)
print(Q.table.entries)

rep = first_iso_check(homs[5])
print("first theorem, kernel", rep.detail["kernel"], "->", rep.path)

rep = second_iso_check(G, {0, 1, 8, 9}, {0, 1, 2, 3})
print("second theorem", rep.detail["A+B"], rep.ok, rep.path)

rep = third_iso_check(G, {0, 1}, range(8))
print("third theorem", rep.detail["orders"], rep.ok, rep.path)

lat = lattice_check(G, {0, 1})
for K, image in lat.correspondence:
    print(f"  {K} -> {image}")
