"""Finite gyrogroups given by Cayley tables.

Elements are the integers ``0..n-1`` and ``0`` is always the identity. The
whole axiom check is exhaustive and vectorised with numpy, which keeps the
O(n^4) automorphism test cheap at the sizes this package targets.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import GyrogroupOps
from .errors import NotAGyrogroupError, PreconditionError, TableFormatError
from .perm import Permutation

__all__ = [
    "AXIOM_IDS",
    "AxiomReport",
    "CayleyTable",
    "FiniteGyrogroup",
    "K16_TABLE",
    "cyclic_group",
    "direct_product",
    "gyration_table",
    "invariant_under_gyrations",
    "is_automorphism",
    "k16",
    "load_table",
    "normalize_identity",
    "relabel",
    "save_table",
    "verify_axioms",
]

# Addition table of the 16-element gyrogroup K16 (row a, column b holds a ⊕ b).
K16_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    (1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 15, 14),
    (2, 3, 1, 0, 6, 7, 5, 4, 11, 10, 8, 9, 15, 14, 12, 13),
    (3, 2, 0, 1, 7, 6, 4, 5, 10, 11, 9, 8, 14, 15, 13, 12),
    (4, 5, 6, 7, 3, 2, 0, 1, 15, 14, 12, 13, 9, 8, 11, 10),
    (5, 4, 7, 6, 2, 3, 1, 0, 14, 15, 13, 12, 8, 9, 10, 11),
    (6, 7, 5, 4, 0, 1, 2, 3, 13, 12, 15, 14, 10, 11, 9, 8),
    (7, 6, 4, 5, 1, 0, 3, 2, 12, 13, 14, 15, 11, 10, 8, 9),
    (8, 9, 10, 11, 12, 13, 14, 15, 0, 1, 2, 3, 4, 5, 6, 7),
    (9, 8, 11, 10, 13, 12, 15, 14, 1, 0, 3, 2, 5, 4, 7, 6),
    (10, 11, 9, 8, 14, 15, 13, 12, 3, 2, 0, 1, 7, 6, 4, 5),
    (11, 10, 8, 9, 15, 14, 12, 13, 2, 3, 1, 0, 6, 7, 5, 4),
    (12, 13, 14, 15, 11, 10, 8, 9, 6, 7, 5, 4, 0, 1, 2, 3),
    (13, 12, 15, 14, 10, 11, 9, 8, 7, 6, 4, 5, 1, 0, 3, 2),
    (14, 15, 13, 12, 8, 9, 10, 11, 4, 5, 6, 7, 3, 2, 0, 1),
    (15, 14, 12, 13, 9, 8, 11, 10, 5, 4, 7, 6, 2, 3, 1, 0),
)

AXIOM_IDS = ("G1", "G2", "G3-auto", "G3-assoc", "G4", "row-bijective", "range")

# Above this order gyrations are computed per pair on demand instead of up front.
EAGER_GYRATION_LIMIT = 64


class CayleyTable:
    """Square table of element indices; ``entries[i, j] = i ⊕ j``.

    Construction only checks shape and range. Whether the table is a
    gyrogroup is the job of :func:`verify_axioms`; the stricter file-format
    rules are enforced by :func:`load_table`.
    """

    __slots__ = ("entries", "relabeling")

    def __init__(self, entries, relabeling: Permutation | None = None):
        try:
            arr = np.array(entries, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise TableFormatError(f"table entries are not integers: {exc}") from exc
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise TableFormatError(f"table must be a nonempty square array, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            i, j = (int(x) for x in bad[0])
            raise TableFormatError(f"entry ({i}, {j}) = {arr[i, j]} outside 0..{n - 1}")
        arr.setflags(write=False)
        self.entries = arr
        self.relabeling = relabeling

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"CayleyTable(order={self.order})"


@dataclass
class AxiomReport:
    """Outcome of :func:`verify_axioms`.

    ``violations`` holds ``(axiom_id, witness)`` pairs, at most
    ``max_witnesses`` per axiom. Failures of the right-hand counterparts
    (which follow from the left axioms) are reported with ids prefixed
    ``consistency:`` since they would indicate a bug, not a bad table.
    """

    order: int
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)
    samples: int | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def failed_axioms(self) -> list[str]:
        return sorted({axiom for axiom, _ in self.violations})

    def witnesses(self, axiom: str) -> list[tuple[int, ...]]:
        return [w for a, w in self.violations if a == axiom]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "passed": self.passed,
            "checked": list(self.checked),
            "samples": self.samples,
            "seed": self.seed,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def _as_table(table) -> CayleyTable:
    return table if isinstance(table, CayleyTable) else CayleyTable(table)


def _left_inverses(T: np.ndarray) -> np.ndarray:
    """For each a the least b with ``b ⊕ a = 0``; -1 where none exists."""
    hits = T == 0  # hits[b, a]
    first = np.argmax(hits, axis=0)
    return np.where(hits.any(axis=0), first, -1)


def _gyrations(T: np.ndarray, neg: np.ndarray) -> np.ndarray:
    """``gy[a, b, c] = ⊖(a⊕b) ⊕ (a⊕(b⊕c))`` for all triples."""
    n = T.shape[0]
    a_bc = T[np.arange(n)[:, None, None], T[None, :, :]]
    return T[neg[T][:, :, None], a_bc]


def _is_perm_rows(M: np.ndarray) -> np.ndarray:
    """Boolean mask over leading axes: is the last axis a permutation of 0..n-1."""
    n = M.shape[-1]
    return (np.sort(M, axis=-1) == np.arange(n)).all(axis=-1)


def verify_axioms(table, max_witnesses: int = 8) -> AxiomReport:
    """Check every gyrogroup axiom exhaustively on a Cayley table.

    Left identity (G1), left inverses (G2), that each gyrator-identity map is
    an automorphism (G3-auto), left gyroassociativity (G3-assoc) and the left
    loop property (G4) are tested, plus bijectivity of every row. When the
    left axioms hold, the two-sided identity and inverse, right
    gyroassociativity and right loop property are also evaluated as
    diagnostics.
    """
    table = _as_table(table)
    T = table.entries
    n = table.order
    report = AxiomReport(order=n)
    ar = np.arange(n)

    def record(axiom: str, witnesses: Iterable) -> None:
        report.checked.append(axiom)
        for w in itertools.islice(witnesses, max_witnesses):
            report.violations.append((axiom, tuple(int(x) for x in np.atleast_1d(w))))

    record("G1", np.flatnonzero(T[0] != ar))

    neg = _left_inverses(T)
    record("G2", np.flatnonzero(neg < 0))

    def row_collisions():
        for a in np.flatnonzero(~_is_perm_rows(T)):
            row = T[a].tolist()
            seen: dict[int, int] = {}
            for x, y in enumerate(row):
                if y in seen:
                    yield (a, seen[y], x)
                    break
                seen[y] = x
    record("row-bijective", row_collisions())

    if (neg < 0).any():
        return report

    gy = _gyrations(T, neg)

    def auto_failures():
        not_bij = np.argwhere(~_is_perm_rows(gy))
        yield from not_bij
        for a in range(n):
            g = gy[a]  # g[b, c]
            lhs = g[:, T]  # lhs[b, x, y] = g_b(x ⊕ y)
            rhs = T[g[:, :, None], g[:, None, :]]
            for b, x, y in np.argwhere(lhs != rhs):
                yield (a, b, x, y)
    record("G3-auto", auto_failures())

    lhs = T[ar[:, None, None], T[None, :, :]]
    rhs = T[T[:, :, None], gy]
    record("G3-assoc", np.argwhere(lhs != rhs))

    loop = (gy != gy[T, ar[None, :]]).any(axis=-1)
    record("G4", np.argwhere(loop))

    if report.passed:
        record("consistency:right-identity", np.flatnonzero(T[:, 0] != ar))
        record("consistency:right-inverse", np.flatnonzero(T[ar, neg] != 0))
        record("consistency:unique-inverse", np.flatnonzero((T == 0).sum(axis=0) != 1))
        # (a ⊕ b) ⊕ c = a ⊕ (b ⊕ gyr[b, a]c)
        gy_ba = np.swapaxes(gy, 0, 1)
        rhs_b = T[ar[:, None, None], T[ar[None, :, None], gy_ba]]
        record("consistency:g3b", np.argwhere(T[T[:, :, None], ar[None, None, :]] != rhs_b))
        record("consistency:g4b", np.argwhere((gy != gy[ar[:, None], T.T]).any(axis=-1)))
    return report


class FiniteGyrogroup(GyrogroupOps):
    """A verified finite gyrogroup backed by a Cayley table.

    Construction runs :func:`verify_axioms` unless ``verify=False`` is
    passed (only for tables already known to be valid, e.g. quotients that
    were checked separately) and raises :class:`NotAGyrogroupError` on
    failure. Instances are immutable.
    """

    def __init__(self, table, verify: bool = True, name: str | None = None):
        table = _as_table(table)
        if verify:
            report = verify_axioms(table)
            if not report.passed:
                raise NotAGyrogroupError(report)
        self.table = table
        self.name = name
        T = table.entries
        self._rows = T.tolist()
        neg = _left_inverses(T)
        if (neg < 0).any():
            raise NotAGyrogroupError(verify_axioms(table))
        self._neg = neg.tolist()
        self._neg_arr = neg
        self._gy = _gyrations(T, neg) if self.order <= EAGER_GYRATION_LIMIT else None
        if self._gy is not None:
            self._gy.setflags(write=False)

    @property
    def order(self) -> int:
        return self.table.order

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def identity(self) -> int:
        return 0

    def add(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    @property
    def entries(self) -> np.ndarray:
        return self.table.entries

    @property
    def negation(self) -> np.ndarray:
        return self._neg_arr

    def gyr(self, a: int, b: int, c: int) -> int:
        if self._gy is not None:
            return int(self._gy[a, b, c])
        return self._gyration_images(a, b)[c]

    @functools.lru_cache(maxsize=4096)
    def _gyration_images(self, a: int, b: int) -> tuple[int, ...]:
        rows = self._rows
        row_ab = rows[self._neg[rows[a][b]]]
        row_a, row_b = rows[a], rows[b]
        return tuple(row_ab[row_a[row_b[c]]] for c in range(self.order))

    def gyration(self, a: int, b: int) -> Permutation:
        if self._gy is not None:
            return Permutation(self._gy[a, b].tolist())
        return Permutation(self._gyration_images(a, b))

    def gyration_array(self) -> np.ndarray:
        """``gy[a, b, c] = gyr[a,b]c`` as an array (computed if not cached)."""
        if self._gy is not None:
            return self._gy
        return _gyrations(self.table.entries, self._neg_arr)

    @functools.cached_property
    def _left_translations(self) -> list[Permutation]:
        return [Permutation(row) for row in self._rows]

    def left_translation(self, a: int) -> Permutation:
        return self._left_translations[a]

    def right_translation(self, a: int) -> Permutation:
        return Permutation(row[a] for row in self._rows)

    def is_automorphism(self, perm: Permutation | Sequence[int]) -> bool:
        return is_automorphism(self, perm)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGyrogroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGyrogroup{label} order={self.order}>"


def is_automorphism(G: FiniteGyrogroup, perm: Permutation | Sequence[int]) -> bool:
    p = np.asarray(list(perm), dtype=np.int64)
    if len(p) != G.order or not _is_perm_rows(p):
        return False
    T = G.entries
    return bool((p[T] == T[p[:, None], p[None, :]]).all())


def gyration_table(G: FiniteGyrogroup) -> list[list[Permutation]]:
    """Entry ``[a][b]`` is the permutation ``gyr[a,b]``."""
    n = G.order
    cache: dict[tuple[int, ...], Permutation] = {}
    gy = G.gyration_array()
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            key = tuple(gy[a, b].tolist())
            perm = cache.get(key)
            if perm is None:
                perm = cache[key] = Permutation(key)
            row.append(perm)
        out.append(row)
    return out


def invariant_under_gyrations(G: FiniteGyrogroup, subset: Iterable[int]) -> tuple[bool, bool]:
    """Return ``(gyr[a,b](X) ⊆ X for all a,b, gyr[a,b](X) = X for all a,b)``."""
    X = sorted(set(subset))
    gy = G.gyration_array()
    member = np.zeros(G.order, dtype=bool)
    member[X] = True
    images = gy[:, :, X]  # images[a, b, i] = gyr[a,b](X[i])
    contained = bool(member[images].all())
    equal = contained and all(
        set(images[a, b].tolist()) == set(X) for a in range(G.order) for b in range(G.order)
    )
    return contained, equal


def k16() -> FiniteGyrogroup:
    """The 16-element gyrogroup with a single nonidentity gyration."""
    return FiniteGyrogroup(K16_TABLE, name="K16")


def cyclic_group(n: int) -> FiniteGyrogroup:
    ar = np.arange(n)
    return FiniteGyrogroup((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def direct_product(G: FiniteGyrogroup, H: FiniteGyrogroup) -> FiniteGyrogroup:
    """Componentwise product; the pair ``(g, h)`` is encoded as ``g * |H| + h``."""
    m = H.order
    TG, TH = G.entries, H.entries
    n = G.order * m
    idx = np.arange(n)
    g, h = idx // m, idx % m
    table = TG[g[:, None], g[None, :]] * m + TH[h[:, None], h[None, :]]
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return FiniteGyrogroup(table, name=name)


def relabel(G: FiniteGyrogroup, sigma: Permutation | Sequence[int]) -> FiniteGyrogroup:
    """Transport ``G`` along the relabeling ``a -> sigma(a)``; ``sigma`` must fix 0.

    The new table satisfies ``sigma(a) ⊕' sigma(b) = sigma(a ⊕ b)``, so
    ``sigma`` becomes an isomorphism ``G -> G'``.
    """
    s = np.asarray(list(sigma), dtype=np.int64)
    if len(s) != G.order or not _is_perm_rows(s):
        raise TableFormatError("relabeling is not a bijection of the carrier")
    if s[0] != 0:
        raise PreconditionError("relabeling must fix the identity 0; use core.transport for general bijections")
    inv = np.argsort(s)
    T = G.entries
    new = s[T[inv[:, None], inv[None, :]]]
    return FiniteGyrogroup(new)


def normalize_identity(entries) -> CayleyTable:
    """Relabel a table whose two-sided identity is not element 0.

    The identity ``e`` is swapped with 0; the applied relabeling is stored in
    ``CayleyTable.relabeling`` (``None`` when nothing had to change).
    """
    table = _as_table(entries)
    T = table.entries
    n = table.order
    ar = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar)]
    if not candidates:
        raise TableFormatError("table has no two-sided identity element", kind="identity")
    e = candidates[0]
    if e == 0:
        return table
    images = list(range(n))
    images[0], images[e] = e, 0
    s = np.asarray(images)
    new = s[T[s[:, None], s[None, :]]]  # s is an involution, so s = s^-1
    return CayleyTable(new, relabeling=Permutation(images))


# -- text format ----------------------------------------------------------


def load_table(text: str, normalize: bool = False, strict: bool = True) -> CayleyTable:
    """Parse the table file format.

    Line 1 holds the order ``n``; the next ``n`` non-comment lines hold the
    rows. Lines starting with ``#`` and blank lines are skipped. Element 0
    must be the identity unless ``normalize`` is set, in which case the table
    is relabeled (see :func:`normalize_identity`).

    With ``strict=False`` only the shape, tokens and range are checked, so a
    table whose rows are not permutations or whose element 0 is not an
    identity still loads and can be handed to :func:`verify_axioms`, which
    reports those defects with witnesses.
    """
    lines = [
        (num, line.strip())
        for num, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise TableFormatError("empty table file", kind="header")
    header_line, header = lines[0]
    if len(header.split()) != 1:
        raise TableFormatError("first line must hold only the order n", line=header_line, kind="header")
    try:
        n = int(header)
    except ValueError:
        raise TableFormatError(f"order {header!r} is not an integer", line=header_line, column=1, kind="token")
    if n <= 0:
        raise TableFormatError(f"order must be positive, got {n}", line=header_line, column=1, kind="header")
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else None
        raise TableFormatError(f"expected {n} rows, found {len(body)}", line=where, kind="row-count")
    rows = []
    for num, line in body:
        tokens = line.split()
        if len(tokens) != n:
            raise TableFormatError(f"expected {n} entries, found {len(tokens)}", line=num, kind="column-count")
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                value = int(tok, 10)
            except ValueError:
                raise TableFormatError(f"non-integer token {tok!r}", line=num, column=col, kind="token")
            if not 0 <= value < n:
                raise TableFormatError(f"entry {value} outside 0..{n - 1}", line=num, column=col, kind="range")
            row.append(value)
        rows.append(row)
    if not strict:
        return CayleyTable(rows)
    line_of_row = [num for num, _ in body]
    for i, row in enumerate(rows):
        if sorted(row) != list(range(n)):
            raise TableFormatError(f"row {i} is not a permutation of 0..{n - 1}", line=line_of_row[i],
                                   kind="row-permutation")
    if normalize:
        return normalize_identity(rows)
    if rows[0] != list(range(n)):
        col = next(j for j, v in enumerate(rows[0]) if v != j) + 1
        raise TableFormatError("row 0 must be 0 1 ... n-1 (element 0 is the identity)", line=line_of_row[0],
                               column=col, kind="identity")
    for i, row in enumerate(rows):
        if row[0] != i:
            raise TableFormatError(f"column 0 of row {i} must be {i} (element 0 is the identity)",
                                   line=line_of_row[i], column=1, kind="identity")
    return CayleyTable(rows)


def save_table(table) -> str:
    if isinstance(table, FiniteGyrogroup):
        table = table.table
    table = _as_table(table)
    out = [str(table.order)]
    out.extend(" ".join(str(x) for x in row) for row in table.rows())
    return "\n".join(out) + "\n"
