"""
The gyrogroup on Sym(G)
=======================

Any permutation of G factors as a left translation after a permutation
fixing 0; multiplying the factors separately makes Sym(G) a gyrogroup.
"""

from gyrogroups import (
    Permutation,
    composition_law_check,
    cyclic_group,
    embed,
    factorize,
    k16,
    sym_add,
    verify_sym_gyrogroup,
)

Z4 = cyclic_group(4)
report = verify_sym_gyrogroup(Z4)
print("Sym(Z4):", report.passed, "over", report.samples, "triples")

G = k16()
sigma = factorize(G, Permutation.from_cycles(16, [(0, 5, 9), (2, 3)]))
tau = factorize(G, Permutation.from_cycles(16, [(0, 8), (1, 15, 14)]))
print(sigma, tau)
print("sum:", sym_add(G, sigma, tau))

# G sits inside Sym(G) as its left translations
print(sym_add(G, embed(G, 4), embed(G, 8)).perm == embed(G, G.add(4, 8)).perm)
print("L_a L_b = L_(a+b) gyr[a,b]:", composition_law_check(G))

report = verify_sym_gyrogroup(G, mode="sampled", samples=2000, seed=1)
print("Sym(K16) sampled:", report.passed, "seed", report.seed)
