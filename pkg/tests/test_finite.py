import itertools
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gyrogroups import (
    K16_TABLE,
    CayleyTable,
    FiniteGyrogroup,
    NotAGyrogroupError,
    Permutation,
    TableFormatError,
    cyclic_group,
    direct_product,
    gyration_table,
    invariant_under_gyrations,
    is_automorphism,
    k16,
    load_table,
    normalize_identity,
    relabel,
    save_table,
    verify_axioms,
)

A_CYCLES = Permutation.from_cycles(16, [(8, 9), (10, 11), (12, 13), (14, 15)])


def naive_is_gyrogroup(T):
    """Direct transcription of the axioms over Python lists."""
    n = len(T)
    add = lambda a, b: T[a][b]  # noqa: E731
    if any(add(0, a) != a for a in range(n)):
        return False
    neg = []
    for a in range(n):
        left = [x for x in range(n) if add(x, a) == 0]
        if not left:
            return False
        neg.append(left[0])
    if any(sorted(row) != list(range(n)) for row in T):
        return False
    solve = {(a, b): next(x for x in range(n) if add(a, x) == b) for a in range(n) for b in range(n)}

    def gyr(a, b, c):
        return solve[(add(a, b), add(a, add(b, c)))]

    for a, b in itertools.product(range(n), repeat=2):
        images = [gyr(a, b, c) for c in range(n)]
        if sorted(images) != list(range(n)):
            return False
        if any(images[add(c, d)] != add(images[c], images[d]) for c in range(n) for d in range(n)):
            return False
        if any(gyr(add(a, b), b, c) != images[c] for c in range(n)):
            return False
    return True


def test_k16_passes_quickly():
    t = time.perf_counter()
    report = verify_axioms(K16_TABLE)
    assert report.passed and time.perf_counter() - t < 1.0
    assert "consistency:g3b" in report.checked and "consistency:g4b" in report.checked


def test_k16_values(K):
    assert K.gyr(4, 8, 8) == 9
    assert K.neg(2) == 3
    assert K.gyration(4, 8) == A_CYCLES
    assert K.gyration(8, 4) == A_CYCLES
    assert K.gyration(1, 15).is_identity()


def test_gyrations_are_automorphisms(K):
    for row in gyration_table(K):
        for g in row:
            assert is_automorphism(K, g)
    assert not is_automorphism(K, Permutation.from_cycles(16, [(1, 2)]))


def test_cyclic_groups_are_gyrogroups_with_trivial_gyrations():
    for n in (1, 2, 4, 7):
        G = cyclic_group(n)
        assert all(g.is_identity() for row in gyration_table(G) for g in row)


def test_direct_product_of_k16_with_z2():
    P = direct_product(k16(), cyclic_group(2))
    assert P.order == 32
    assert len({g for row in gyration_table(P) for g in row}) == 2


def latin_like_tables(max_n=4):
    def build(n):
        rows = st.lists(st.permutations(list(range(n))), min_size=n - 1, max_size=n - 1)
        return rows.map(lambda rest: [list(range(n))] + [list(r) for r in rest])

    return st.integers(2, max_n).flatmap(build)


@settings(max_examples=200, deadline=None)
@given(latin_like_tables())
def test_vectorised_check_matches_naive_oracle(T):
    assert verify_axioms(T).passed == naive_is_gyrogroup(T)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_arbitrary_magmas_never_pass_wrongly(T):
    assert verify_axioms(T).passed == naive_is_gyrogroup(T)


def test_broken_table_reports_witnesses():
    T = [list(r) for r in K16_TABLE]
    T[5][9] = 3
    report = verify_axioms(T)
    assert not report.passed
    assert "row-bijective" in report.failed_axioms()
    with pytest.raises(NotAGyrogroupError) as exc:
        FiniteGyrogroup(T)
    assert exc.value.report.violations


def test_missing_identity_reported_as_g1():
    report = verify_axioms([[1, 0], [0, 1]])
    assert report.witnesses("G1")


def test_cayley_table_rejects_bad_shapes():
    with pytest.raises(TableFormatError):
        CayleyTable([[0, 1], [1]])
    with pytest.raises(TableFormatError):
        CayleyTable([[0, 2], [1, 0]])


def test_save_load_roundtrip(K, data_dir):
    assert load_table(save_table(K)) == K.table
    assert load_table((data_dir / "k16.tbl").read_text()) == K.table


@pytest.mark.parametrize(
    "text,kind,line",
    [
        ("", "header", None),
        ("2 2\n0 1\n1 0\n", "header", 1),
        ("x\n", "token", 1),
        ("0\n", "header", 1),
        ("2\n0 1\n", "row-count", None),
        ("2\n0 1\n1 0\n0 1\n", "row-count", 4),
        ("2\n0 1\n1\n", "column-count", 3),
        ("2\n0 1\n1 z\n", "token", 3),
        ("2\n0 1\n1 2\n", "range", 3),
        ("2\n0 1\n1 1\n", "row-permutation", 3),
        ("2\n1 0\n0 1\n", "identity", 2),
        ("3\n0 1 2\n2 0 1\n1 2 0\n", "identity", 3),
    ],
)
def test_format_errors_are_located(text, kind, line):
    with pytest.raises(TableFormatError) as exc:
        load_table(text)
    assert exc.value.kind == kind
    assert exc.value.line == line


def test_comments_and_blank_lines_are_skipped():
    assert load_table("# z2\n\n2\n0 1\n# row\n1 0\n").order == 2


def test_lenient_load_defers_to_verification():
    T = load_table("2\n0 1\n1 1\n", strict=False)
    assert not verify_axioms(T).passed


def test_normalize_moves_identity_to_zero():
    # Z3 written with 1 as identity: x * y = x + y - 1 mod 3
    rows = [[(x + y - 1) % 3 for y in range(3)] for x in range(3)]
    text = "3\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n"
    with pytest.raises(TableFormatError):
        load_table(text)
    table = load_table(text, normalize=True)
    assert table.relabeling(1) == 0
    assert verify_axioms(table).passed
    assert normalize_identity(K16_TABLE) == CayleyTable(K16_TABLE)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(1, 16))))
def test_relabeling_preserves_gyration_structure(K, tail):
    sigma = Permutation([0] + list(tail))
    R = relabel(K, sigma)
    assert verify_axioms(R.table).passed
    for a, b in [(4, 8), (9, 13), (2, 5)]:
        assert R.gyration(sigma(a), sigma(b)) == sigma * K.gyration(a, b) * sigma.inverse()
    assert len({g for row in gyration_table(R) for g in row}) == 2


def test_invariant_under_gyrations(K):
    assert invariant_under_gyrations(K, {0, 1}) == (True, True)
    assert invariant_under_gyrations(K, {0, 8}) == (False, False)


def test_large_orders_use_lazy_gyrations():
    G = direct_product(direct_product(k16(), cyclic_group(2)), cyclic_group(3))
    assert G.order == 96
    A = G.gyration(4 * 6, 8 * 6)
    assert not A.is_identity()
    assert A == G.gyration(4 * 6, 8 * 6 + 1)
    assert np.array_equal(G.gyration_array()[4 * 6, 8 * 6], np.asarray(A.images))
