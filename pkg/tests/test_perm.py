import pytest
from hypothesis import given, strategies as st

from gyrogroups import Permutation, TableFormatError, parse_cycles


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


def test_composition_applies_right_factor_first():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    assert (p * q)(1) == p(q(1)) == 0


def test_rejects_non_bijection():
    with pytest.raises(TableFormatError):
        Permutation([0, 0, 1])


def test_cycle_notation_roundtrip():
    p = Permutation.from_cycles(16, [(8, 9), (10, 11), (12, 13), (14, 15)])
    assert p.cycle_notation() == "(8 9)(10 11)(12 13)(14 15)"
    assert parse_cycles(p.cycle_notation(), 16) == p
    assert Permutation.identity(4).cycle_notation() == "()"
    assert parse_cycles("()", 4).is_identity()


@pytest.mark.parametrize("text", ["(1 2", "(1 a)", "1 2", "(1 1)", "(0 9)"])
def test_parse_cycles_errors(text):
    with pytest.raises(TableFormatError):
        parse_cycles(text, 4)


@given(perms(6), perms(6), perms(6))
def test_group_laws(p, q, r):
    e = Permutation.identity(6)
    assert (p * q) * r == p * (q * r)
    assert p * p.inverse() == e == p.inverse() * p
    assert hash(p * e) == hash(p)


@given(perms(7))
def test_cycles_rebuild_permutation(p):
    assert Permutation.from_cycles(7, p.cycles()) == p
    assert p.image_of(range(7)) == frozenset(range(7))
