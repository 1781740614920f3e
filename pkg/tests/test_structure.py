import itertools

import numpy as np
import pytest

from gyrogroups import (
    CapabilityError,
    PreconditionError,
    Subgyrogroup,
    closure,
    cosets_partition,
    cyclic_group,
    direct_product,
    enumerate_subgyrogroups,
    equivalence_classes,
    is_L_subgyrogroup,
    is_subgyrogroup,
    k16,
    l_witness,
    lagrange_check,
    left_coset,
    sim_H,
)


def brute_force_subgyrogroups(G):
    """Every subset containing 0 closed under the operation and negation."""
    T, neg = G.entries, G.negation
    rest = np.arange(1, G.order)
    found = []
    for mask in range(1 << (G.order - 1)):
        members = np.concatenate([[0], rest[[(mask >> i) & 1 == 1 for i in range(G.order - 1)]]])
        inside = np.zeros(G.order, dtype=bool)
        inside[members] = True
        if inside[T[np.ix_(members, members)]].all() and inside[neg[members]].all():
            found.append(frozenset(members.tolist()))
    return set(found)


def test_enumeration_matches_brute_force(K):
    found = {H.members for H in enumerate_subgyrogroups(K)}
    assert found == brute_force_subgyrogroups(K)
    assert len(found) == 19


def test_enumeration_on_small_groups():
    V = direct_product(cyclic_group(2), cyclic_group(2))
    assert len(enumerate_subgyrogroups(V)) == 5
    assert len(enumerate_subgyrogroups(cyclic_group(6))) == 4


def test_enumeration_size_bound():
    G = direct_product(direct_product(k16(), cyclic_group(2)), cyclic_group(3))
    with pytest.raises(CapabilityError):
        enumerate_subgyrogroups(G)


def test_subgyrogroup_basics(K):
    assert is_subgyrogroup(K, {0, 1, 2, 3})
    assert not is_subgyrogroup(K, {0, 2})
    assert not is_subgyrogroup(K, {1})
    with pytest.raises(PreconditionError):
        is_subgyrogroup(K, set())
    with pytest.raises(PreconditionError):
        Subgyrogroup.of(K, {0, 2})
    H = Subgyrogroup.of(K, [3, 0, 1, 2])
    assert H.sorted() == [0, 1, 2, 3] and 2 in H and len(H) == 4
    assert Subgyrogroup.of(K, {0, 1}) <= H


def test_closure(K):
    assert closure(K, [2]).members == frozenset({0, 1, 2, 3})
    assert closure(K, [4]).members == frozenset(range(8))
    assert closure(K, []).members == frozenset({0})


def test_l_classification_and_witness(K):
    for members in ({0, 1}, {0, 1, 2, 3}, set(range(8))):
        assert is_L_subgyrogroup(K, members)
    a, h, image = l_witness(K, {0, 8})
    assert image == frozenset({0, 9})
    assert K.gyration(a, h).image_of({0, 8}) == image
    assert (a, h) == (4, 8)


def test_left_coset(K):
    assert left_coset(K, 4, {0, 8}) == frozenset({4, 15})
    assert left_coset(K, 14, {0, 8}) == frozenset({4, 14})


def test_cosets_of_non_l_subgyrogroup_overlap(K):
    dec = cosets_partition(K, {0, 8})
    assert not dec.is_partition
    assert dec.overlaps
    # each representative actually generates its class
    for r, c in zip(dec.representatives, dec.classes):
        assert left_coset(K, r, {0, 8}) == c


def test_sim_classes_always_partition(K):
    for H in enumerate_subgyrogroups(K):
        dec = equivalence_classes(K, H)
        assert dec.is_partition
        for cls in dec.classes:
            a = min(cls)
            assert cls <= left_coset(K, a, H.members)


def test_sim_classes_equal_cosets_exactly_for_l_subgyrogroups(K):
    for H in enumerate_subgyrogroups(K):
        same = equivalence_classes(K, H).classes == cosets_partition(K, H).classes
        assert same == is_L_subgyrogroup(K, H)


def test_lagrange_requires_l_subgyrogroup(K):
    with pytest.raises(PreconditionError):
        lagrange_check(K, {0, 8})
    rec = lagrange_check(K, {0, 1, 8, 9})
    assert rec.holds and rec.index == 4


def test_sim_is_reflexive_on_sample(K):
    H = frozenset({0, 1, 2, 3})
    assert all(sim_H(K, H, a, a) for a in range(16))
    assert sim_H(K, H, 4, 5) and not sim_H(K, H, 4, 8)


def test_coset_report_serializes(K):
    d = cosets_partition(K, {0, 1}).to_dict()
    assert d["is_partition"] and d["index"] == 8
    assert d["classes"][1] == {"representative": 2, "members": [2, 3]}
