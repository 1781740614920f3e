import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gyrogroups import (
    CapabilityError,
    HomomorphismError,
    Permutation,
    PreconditionError,
    TableFormatError,
    cyclic_group,
    direct_product,
    enumerate_homomorphisms,
    enumerate_subgyrogroups,
    find_isomorphism,
    first_iso_check,
    image,
    induced,
    is_normal,
    k16,
    kernel,
    lattice_check,
    load_homomorphism,
    make_homomorphism,
    normal_subgyrogroups,
    normality_report,
    oplus_set,
    preimage,
    quotient,
    relabel,
    save_homomorphism,
    second_iso_check,
    third_iso_check,
    verify_axioms,
)

Z2 = cyclic_group(2)
Z4 = cyclic_group(4)
V4 = direct_product(Z2, Z2)


def brute_force_homomorphisms(G, H):
    """All additive maps, by testing every function G -> H at once."""
    n, m = G.order, H.order
    maps = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64)
    ok = np.ones(len(maps), dtype=bool)
    for a in range(n):
        for b in range(n):
            ok &= maps[:, G.entries[a, b]] == H.entries[maps[:, a], maps[:, b]]
    return {tuple(row) for row in maps[ok].tolist()}


@pytest.mark.parametrize("G,H", [(Z4, V4), (V4, Z4), (Z4, Z4), (V4, V4), (Z2, Z4), (cyclic_group(6), cyclic_group(3))])
def test_search_matches_brute_force(G, H):
    found = {f.images for f in enumerate_homomorphisms(G, H)}
    assert found == brute_force_homomorphisms(G, H)


def test_k16_to_z2_matches_brute_force(K):
    found = {f.images for f in enumerate_homomorphisms(K, Z2)}
    assert found == brute_force_homomorphisms(K, Z2)
    assert len(found) == 4


def test_enumeration_bound(K):
    with pytest.raises(CapabilityError):
        enumerate_homomorphisms(K, direct_product(K, Z2))


def test_additivity_failure_has_witness():
    with pytest.raises(HomomorphismError) as exc:
        make_homomorphism(Z4, Z4, [0, 2, 1, 3])
    a, b = exc.value.witness
    f = [0, 2, 1, 3]
    assert f[Z4.add(a, b)] != Z4.add(f[a], f[b])
    with pytest.raises(HomomorphismError):
        make_homomorphism(Z4, Z4, [0, 1, 2])


def test_kernel_image_preimage():
    f = make_homomorphism(Z4, Z4, [0, 2, 0, 2])
    assert kernel(f).members == frozenset({0, 2})
    assert image(f).members == frozenset({0, 2})
    assert preimage(f, {0}).members == frozenset({0, 2})
    assert preimage(f, {0, 2}).members == frozenset(range(4))


def test_homomorphism_roundtrip(K):
    f = quotient(K, {0, 1}).projection
    g = load_homomorphism(save_homomorphism(f), K, f.target)
    assert g.images == f.images
    with pytest.raises(TableFormatError):
        load_homomorphism("16\n0 1\n", K, f.target)


def test_normality_matches_kernels_of_all_endomorphisms(K):
    kernels = {kernel(f).members for f in enumerate_homomorphisms(K, K)}
    normals = {N.members for N in normal_subgyrogroups(K)}
    assert normals == kernels
    assert len(normals) == 7
    for H in enumerate_subgyrogroups(K):
        assert is_normal(K, H) == (H.members in kernels)


def test_normality_stages(K):
    assert normality_report(K, {0, 8}).failed_stage == "L-subgyrogroup"
    rep = normality_report(K, {0, 1, 8, 9})
    assert not rep and rep.failed_stage == "well-defined"
    with pytest.raises(PreconditionError):
        normality_report(K, {0, 2})


def test_quotient(K):
    Q = quotient(K, {0, 1, 2, 3})
    assert Q.order == 4 and verify_axioms(Q.table).passed
    assert Q.coset_of(5) == Q.coset_of(6)
    assert kernel(Q.projection).members == frozenset({0, 1, 2, 3})
    with pytest.raises(PreconditionError):
        quotient(K, {0, 1, 8, 9})


def test_induced(K):
    G, members = induced(K, set(range(8)))
    assert members == list(range(8)) and G.order == 8
    assert all(G.add(a, b) == K.add(a, b) for a in range(8) for b in range(8))


def test_first_theorem_for_every_endomorphism(K):
    for f in enumerate_homomorphisms(K, K)[::7]:
        rep = first_iso_check(f)
        assert rep.ok and rep.domain.order * len(rep.detail["kernel"]) == 16


def test_second_and_third_theorems(K):
    assert second_iso_check(K, {0, 1, 8, 9}, {0, 1, 2, 3}).ok
    assert oplus_set(K, {0, 1, 8, 9}, {0, 1, 2, 3}).members == frozenset({0, 1, 2, 3, 8, 9, 10, 11})
    rep = third_iso_check(K, {0, 1}, set(range(8)))
    assert rep.ok and rep.path == "canonical" and rep.domain.order == 2
    with pytest.raises(PreconditionError):
        third_iso_check(K, set(range(8)), {0, 1})
    with pytest.raises(PreconditionError):
        second_iso_check(K, {0, 1}, {0, 1, 8, 9})


def test_lattice(K):
    rep = lattice_check(K, {0, 1})
    assert rep.ok
    assert len(rep.correspondence) == len([H for H in enumerate_subgyrogroups(K) if {0, 1} <= H.members])


def test_isomorphism_search_distinguishes_groups():
    assert find_isomorphism(Z4, V4) is None
    assert find_isomorphism(Z4, cyclic_group(4)).is_isomorphism


@settings(max_examples=10, deadline=None)
@given(st.permutations(list(range(1, 16))))
def test_isomorphism_search_recovers_relabeling(K, tail):
    sigma = Permutation([0] + list(tail))
    R = relabel(K, sigma)
    f = find_isomorphism(K, R)
    assert f is not None and f.is_isomorphism
    assert find_isomorphism(K, direct_product(cyclic_group(8), Z2)) is None
