"""Acceptance criteria, one group of tests per criterion.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion together with the measured figures.
"""

import itertools
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gyrogroups import (
    IDENTITY_LAWS,
    K16_TABLE,
    EinsteinBall,
    MobiusBall,
    MobiusDisk,
    Permutation,
    axiom_suite,
    check_identities,
    cosets_partition,
    cyclic_group,
    direct_product,
    einstein_add,
    enumerate_homomorphisms,
    enumerate_subgyrogroups,
    first_iso_check,
    gyration_table,
    is_L_subgyrogroup,
    is_normal,
    kernel,
    l_witness,
    lagrange_check,
    lattice_check,
    mobius_disk_gyr,
    quotient,
    relabel,
    second_iso_check,
    sim_H,
    third_iso_check,
    verify_axioms,
    verify_sym_gyrogroup,
)

A = Permutation.from_cycles(16, [(8, 9), (10, 11), (12, 13), (14, 15)])

# Gyration table of K16 written out by hand: row a, column b names gyr[a,b].
EXPECTED_GYRATIONS = (
    ["I" * 16] * 4
    + ["I" * 8 + "A" * 8] * 4
    + ["I" * 4 + "A" * 4 + "I" * 4 + "A" * 4] * 4
    + ["I" * 4 + "A" * 8 + "I" * 4] * 4
)


def criterion(n, title):
    return pytest.mark.criterion(n, title)


@criterion(1, "K16 passes exhaustive axiom verification in under 1 s")
def test_k16_verification(record_property):
    start = time.perf_counter()
    report = verify_axioms(K16_TABLE)
    elapsed = time.perf_counter() - start
    record_property("detail", f"{elapsed * 1000:.1f} ms, checked {len(report.checked)} groups")
    assert report.passed
    for diag in ("consistency:right-identity", "consistency:right-inverse", "consistency:g3b", "consistency:g4b"):
        assert diag in report.checked
    assert elapsed < 1.0


@criterion(2, "K16 gyration table reproduced exactly; two gyrations, A = (8 9)(10 11)(12 13)(14 15)")
def test_gyration_table(K, record_property):
    table = gyration_table(K)
    distinct = {g for row in table for g in row}
    assert distinct == {Permutation.identity(16), A}
    for a, b in itertools.product(range(16), repeat=2):
        expected = A if EXPECTED_GYRATIONS[a][b] == "A" else Permutation.identity(16)
        assert table[a][b] == expected, (a, b)
    record_property("detail", "256/256 entries match")


@criterion(3, "L-subgyrogroup classification with witness gyr[4,8]({0,8}) = {0,9}")
def test_l_classification(K, record_property):
    for members in ({0, 1}, {0, 1, 2, 3}, set(range(8))):
        assert is_L_subgyrogroup(K, members)
    assert not is_L_subgyrogroup(K, {0, 8})
    a, h, image = l_witness(K, {0, 8})
    assert (a, h, image) == (4, 8, frozenset({0, 9}))
    assert K.gyration(4, 8).image_of({0, 8}) == {0, 9}
    record_property("detail", f"witness gyr[{a},{h}] -> {sorted(image)}")


@criterion(4, "Lagrange: cosets of every L-subgyrogroup partition K16 and 16 = [G:H]|H|")
def test_lagrange(K, record_property):
    ls = [H for H in enumerate_subgyrogroups(K) if is_L_subgyrogroup(K, H)]
    for H in ls:
        dec = cosets_partition(K, H)
        assert dec.is_partition and not dec.overlaps
        assert sorted(itertools.chain.from_iterable(dec.classes)) == list(range(16))
        rec = lagrange_check(K, H)
        assert rec.holds and rec.index * H.order == 16
    record_property("detail", f"{len(ls)} L-subgyrogroups")


@criterion(5, "identity suite over all 4096 triples of K16 with zero violations")
def test_identity_suite(K, record_property):
    found = check_identities(K)
    assert set(found) == set(IDENTITY_LAWS)
    violations = sum(len(w) for w in found.values())
    record_property("detail", f"{len(found)} laws, {violations} violations")
    assert violations == 0


@criterion(6, "~_H is an equivalence relation for every subgyrogroup of K16")
def test_sim_equivalence(K, record_property):
    subs = enumerate_subgyrogroups(K)
    assert frozenset({0, 8}) in {H.members for H in subs}
    for H in subs:
        R = np.array([[sim_H(K, H, a, b) for b in range(16)] for a in range(16)])
        assert R.diagonal().all()
        assert (R == R.T).all()
        # transitivity over all 4096 triples: R[a,b] and R[b,c] imply R[a,c]
        implied = R[:, :, None] & R[None, :, :]
        assert (~implied | R[:, None, :]).all()
    record_property("detail", f"{len(subs)} subgyrogroups")


@criterion(7, "Sym(G) exhaustive on 4-element groups (13824 triples); sampled on K16 (10^4 triples)")
def test_sym_gyrogroup(K, record_property):
    for G in (cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))):
        report = verify_sym_gyrogroup(G, mode="exhaustive")
        assert report.passed and report.samples == 13824
    sampled = verify_sym_gyrogroup(K, mode="sampled", samples=10_000, seed=7)
    assert sampled.passed and sampled.samples == 10_000
    record_property("detail", "13824 + 13824 exhaustive, 10000 sampled (seed 7)")


@pytest.fixture(scope="module")
def normals(K):
    return [H.members for H in enumerate_subgyrogroups(K) if is_normal(K, H)]


@criterion(8, "isomorphism-theorem battery on K16 and agreement with the homomorphism oracle")
def test_quotients_and_first_theorem(K, normals, record_property):
    for N in normals:
        Q = quotient(K, N)
        assert verify_axioms(Q.table).passed
        assert first_iso_check(Q.projection).ok
    record_property("detail", f"{len(normals)} normal subgyrogroups")


@criterion(8, "isomorphism-theorem battery on K16 and agreement with the homomorphism oracle")
def test_second_third_lattice(K, normals, record_property):
    subs = [H.members for H in enumerate_subgyrogroups(K)]
    second = [(A_, B) for A_ in subs for B in normals]
    third = [(H, K_) for H in normals for K_ in normals if H <= K_]
    assert all(second_iso_check(K, A_, B).ok for A_, B in second)
    assert all(third_iso_check(K, H, K_).ok for H, K_ in third)
    assert all(lattice_check(K, N).ok for N in normals)
    record_property("detail", f"{len(second)} second, {len(third)} third, {len(normals)} lattice")


@criterion(8, "isomorphism-theorem battery on K16 and agreement with the homomorphism oracle")
def test_normality_oracle(K, normals, record_property):
    homs = enumerate_homomorphisms(K, K)
    kernels = {kernel(f).members for f in homs}
    for H in enumerate_subgyrogroups(K):
        assert (H.members in normals) == (H.members in kernels)
    record_property("detail", f"oracle: {len(homs)} endomorphisms, {len(kernels)} kernels")


@criterion(9, "continuous models: disk closed form <= 1e-12, Mobius suite <= 1e-12, Einstein <= 1e-9, 0.8c")
def test_disk_closed_form(record_property):
    D = MobiusDisk()
    rng = np.random.default_rng(0)
    a, b, z = (D.sample(rng, 10_000) for _ in range(3))
    dev = float(np.max(D.deviation(D.gyr(a, b, z), mobius_disk_gyr(a, b, z))))
    record_property("detail", f"closed form vs gyrator {dev:.2e}")
    assert dev <= 1e-12


@criterion(9, "continuous models: disk closed form <= 1e-12, Mobius suite <= 1e-12, Einstein <= 1e-9, 0.8c")
@pytest.mark.parametrize("model,tol", [(MobiusDisk(), 1e-12), (MobiusBall(3), 1e-12), (EinsteinBall(3, c=1.0), 1e-9)],
                         ids=["disk", "ball3", "einstein3"])
def test_model_suites(model, tol, record_property):
    assert model.tolerance == tol
    worst = 0.0
    for seed in range(3):
        rep = axiom_suite(model, samples=10_000, seed=seed)
        assert "gyrocommutativity" in rep.max_deviation
        worst = max(worst, max(rep.max_deviation.values()))
        assert rep.passed, rep.to_dict()
    record_property("detail", f"{model.name}: worst {worst:.2e} at norm <= {model.sample_fraction} radius")
    assert worst <= tol


@criterion(9, "continuous models: disk closed form <= 1e-12, Mobius suite <= 1e-12, Einstein <= 1e-9, 0.8c")
def test_collinear_einstein(record_property):
    for c in (1.0, 2.0, 299_792.458):
        u = np.array([0.5 * c, 0.0, 0.0])
        w = einstein_add(u, u, c)
        assert abs(w[0] / c - 0.8) <= 1e-15 and w[1] == w[2] == 0.0
    record_property("detail", "0.5c + 0.5c = 0.8c")


@criterion(10, "property suites: invariants transported along random relabelings of K16")
@settings(max_examples=15, deadline=None)
@given(st.permutations(list(range(1, 16))))
def test_transport_invariants(K, tail):
    sigma = Permutation([0] + list(tail))
    R = relabel(K, sigma)
    assert verify_axioms(R.table).passed
    assert len({g for row in gyration_table(R) for g in row}) == 2
    assert not any(check_identities(R, laws=["gyrosum_inversion", "left_cancellation"]).values())
    for H in enumerate_subgyrogroups(K):
        image = sigma.image_of(H.members)
        assert is_L_subgyrogroup(R, image) == is_L_subgyrogroup(K, H)
        assert is_normal(R, image) == is_normal(K, H)
