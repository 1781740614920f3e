"""Homomorphisms, quotients and the isomorphism theorems for finite gyrogroups.

Normality is decided constructively. A subgyrogroup ``N`` passes
:func:`is_normal` when it is an L-subgyrogroup, the coset operation
``(a⊕N)⊕(b⊕N) = (a⊕b)⊕N`` does not depend on representatives, the
resulting table is a gyrogroup and the projection ``a -> a⊕N`` is a
homomorphism with kernel exactly ``N``. The last condition exhibits ``N`` as
a kernel, so a passing subgyrogroup is normal in the kernel sense; the
converse direction (every kernel passes) is what the quotient construction
of a kernel guarantees. :func:`enumerate_homomorphisms` provides an
independent check at small orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapabilityError, ConsistencyError, HomomorphismError, PreconditionError, TableFormatError
from .finite import CayleyTable, FiniteGyrogroup, verify_axioms
from .structure import (
    CosetDecomposition,
    Subgyrogroup,
    cosets_partition,
    enumerate_subgyrogroups,
    is_L_subgyrogroup,
    is_subgyrogroup,
    l_witness,
)

__all__ = [
    "GyroHomomorphism",
    "IsoReport",
    "LatticeReport",
    "NormalityReport",
    "QuotientGyrogroup",
    "enumerate_homomorphisms",
    "find_isomorphism",
    "first_iso_check",
    "image",
    "induced",
    "is_normal",
    "kernel",
    "lattice_check",
    "load_homomorphism",
    "make_homomorphism",
    "normal_subgyrogroups",
    "normality_report",
    "oplus_set",
    "preimage",
    "quotient",
    "save_homomorphism",
    "second_iso_check",
    "third_iso_check",
]

# enumerate_homomorphisms refuses |G| * |H| beyond this
HOMOMORPHISM_SEARCH_LIMIT = 16 * 16


def _members(H) -> frozenset[int]:
    return H.members if isinstance(H, Subgyrogroup) else frozenset(int(x) for x in H)


@dataclass(frozen=True)
class GyroHomomorphism:
    source: FiniteGyrogroup = field(repr=False)
    target: FiniteGyrogroup = field(repr=False)
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == set(range(self.target.order))

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective


def make_homomorphism(source: FiniteGyrogroup, target: FiniteGyrogroup, images: Sequence[int]) -> GyroHomomorphism:
    """Validate ``images`` as a homomorphism ``source -> target``.

    Raises :class:`HomomorphismError` with the first pair ``(a, b)`` where
    ``f(a⊕b) != f(a)⊕f(b)``. The consequences (identity, inverses,
    gyrations and the cooperation are preserved) are then asserted.
    """
    f = np.asarray(list(images), dtype=np.int64)
    if f.shape != (source.order,):
        raise HomomorphismError(f"map must have {source.order} entries, got {f.shape[0] if f.ndim else 0}")
    if ((f < 0) | (f >= target.order)).any():
        raise HomomorphismError("map leaves the target carrier", witness=(int(np.argmax((f < 0) | (f >= target.order))),))
    TG, TH = source.entries, target.entries
    bad = np.argwhere(f[TG] != TH[f[:, None], f[None, :]])
    if len(bad):
        raise HomomorphismError("map is not additive", witness=tuple(int(x) for x in bad[0]))
    if f[0] != 0:
        raise ConsistencyError("homomorphism does not fix the identity")
    if (f[source.negation] != target.negation[f]).any():
        raise ConsistencyError("homomorphism does not preserve inverses")
    gs, gt = source.gyration_array(), target.gyration_array()
    if (f[gs] != gt[f[:, None, None], f[None, :, None], f[None, None, :]]).any():
        raise ConsistencyError("homomorphism does not preserve gyrations")
    coadd_s = np.array([[source.coadd(a, b) for b in range(source.order)] for a in range(source.order)])
    fl = f.tolist()
    if any(fl[coadd_s[a, b]] != target.coadd(fl[a], fl[b]) for a in range(source.order) for b in range(source.order)):
        raise ConsistencyError("homomorphism does not preserve the cooperation")
    return GyroHomomorphism(source, target, tuple(int(x) for x in f))


def save_homomorphism(f: GyroHomomorphism) -> str:
    return f"{len(f.images)}\n{' '.join(map(str, f.images))}\n"


def load_homomorphism(text: str, source: FiniteGyrogroup, target: FiniteGyrogroup) -> GyroHomomorphism:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 2:
        raise TableFormatError("homomorphism file must hold the order and one line of images")
    try:
        n = int(lines[0])
        images = [int(t) for t in lines[1].split()]
    except ValueError as exc:
        raise TableFormatError(f"non-integer token: {exc}") from exc
    if n != source.order or len(images) != n:
        raise TableFormatError(f"expected {source.order} images")
    return make_homomorphism(source, target, images)


def kernel(f: GyroHomomorphism) -> Subgyrogroup:
    """``{a : f(a) = 0}``, checked to be invariant under every gyration of the source."""
    members = frozenset(a for a, y in enumerate(f.images) if y == 0)
    gy = f.source.gyration_array()
    idx = sorted(members)
    if not set(np.unique(gy[:, :, idx]).tolist()) <= members:
        raise ConsistencyError("kernel is not invariant under the gyrations of the source")
    return Subgyrogroup(f.source, members)


def image(f: GyroHomomorphism) -> Subgyrogroup:
    members = frozenset(f.images)
    if not is_subgyrogroup(f.target, members):
        raise ConsistencyError("image of a homomorphism is not a subgyrogroup")
    return Subgyrogroup(f.target, members)


def preimage(f: GyroHomomorphism, K) -> Subgyrogroup:
    K = _members(K)
    members = frozenset(a for a, y in enumerate(f.images) if y in K)
    if not is_subgyrogroup(f.source, members):
        raise ConsistencyError("preimage of a subgyrogroup is not a subgyrogroup")
    return Subgyrogroup(f.source, members)


def induced(G: FiniteGyrogroup, H) -> tuple[FiniteGyrogroup, list[int]]:
    """The subgyrogroup ``H`` as a gyrogroup in its own right.

    Returns ``(G_H, members)``: element ``i`` of ``G_H`` is ``members[i]`` of
    ``G`` (members sorted, so 0 stays the identity).
    """
    members = sorted(_members(H))
    if not is_subgyrogroup(G, members):
        raise PreconditionError(f"{members} is not a subgyrogroup")
    local = {x: i for i, x in enumerate(members)}
    table = [[local[G.add(a, b)] for b in members] for a in members]
    return FiniteGyrogroup(table), members


# -- normality and quotients ---------------------------------------------


@dataclass
class NormalityReport:
    normal: bool
    failed_stage: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.normal


def _coset_labels(G: FiniteGyrogroup, dec: CosetDecomposition) -> np.ndarray:
    labels = np.full(G.order, -1, dtype=np.int64)
    for i, cls in enumerate(dec.classes):
        labels[list(cls)] = i
    return labels


def _quotient_parts(G: FiniteGyrogroup, N: frozenset[int]):
    """Run the four-stage test; returns ``(report, decomposition, labels, table)``."""
    w = l_witness(G, N)
    if w is not None:
        return NormalityReport(False, "L-subgyrogroup", (w[0], w[1])), None, None, None
    dec = cosets_partition(G, N)
    if not dec.is_partition:
        raise ConsistencyError("cosets of an L-subgyrogroup fail to partition the carrier")
    labels = _coset_labels(G, dec)
    reps = np.asarray(dec.representatives)
    T = G.entries
    Q = labels[T[reps[:, None], reps[None, :]]]
    bad = np.argwhere(labels[T] != Q[labels[:, None], labels[None, :]])
    if len(bad):
        return NormalityReport(False, "well-defined", tuple(int(x) for x in bad[0])), dec, labels, None
    report = verify_axioms(Q)
    if not report.passed:
        return NormalityReport(False, "axioms", report.violations[0]), dec, labels, None
    if not (labels[T] == Q[labels[:, None], labels[None, :]]).all() or set(np.flatnonzero(labels == 0).tolist()) != set(N):
        return NormalityReport(False, "projection"), dec, labels, None
    return NormalityReport(True), dec, labels, Q


def normality_report(G: FiniteGyrogroup, N) -> NormalityReport:
    members = _members(N)
    if not is_subgyrogroup(G, members):
        raise PreconditionError(f"{sorted(members)} is not a subgyrogroup")
    return _quotient_parts(G, members)[0]


def is_normal(G: FiniteGyrogroup, N) -> bool:
    return normality_report(G, N).normal


def normal_subgyrogroups(G: FiniteGyrogroup) -> list[Subgyrogroup]:
    return [H for H in enumerate_subgyrogroups(G) if is_normal(G, H)]


@dataclass
class QuotientGyrogroup:
    """``G/N`` with cosets indexed by their least representative, ascending."""

    parent: FiniteGyrogroup = field(repr=False)
    kernel: Subgyrogroup
    cosets: CosetDecomposition = field(repr=False)
    gyrogroup: FiniteGyrogroup = field(repr=False)
    projection: GyroHomomorphism = field(repr=False)

    @property
    def order(self) -> int:
        return self.gyrogroup.order

    @property
    def table(self) -> CayleyTable:
        return self.gyrogroup.table

    def coset_of(self, a: int) -> int:
        return self.projection.images[a]

    def image_of(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.projection.images[a] for a in subset)


def quotient(G: FiniteGyrogroup, N) -> QuotientGyrogroup:
    members = _members(N)
    if not is_subgyrogroup(G, members):
        raise PreconditionError(f"{sorted(members)} is not a subgyrogroup")
    report, dec, labels, Q = _quotient_parts(G, members)
    if not report.normal:
        raise PreconditionError(f"subgyrogroup is not normal (failed stage: {report.failed_stage}, witness {report.witness})")
    QG = FiniteGyrogroup(Q, verify=False)
    # gyr[X,Y](c⊕N) = (gyr[a,b]c)⊕N
    if (QG.gyration_array()[labels[:, None, None], labels[None, :, None], labels[None, None, :]]
            != labels[G.gyration_array()]).any():
        raise ConsistencyError("quotient gyrations disagree with the induced formula")
    proj = make_homomorphism(G, QG, labels.tolist())
    return QuotientGyrogroup(G, Subgyrogroup(G, members), dec, QG, proj)


# -- isomorphism theorems ------------------------------------------------


@dataclass
class IsoReport:
    """Outcome of an isomorphism-theorem check.

    ``mapping`` sends elements of ``domain`` to elements of ``codomain``;
    ``path`` records whether the map from the proof (``"canonical"``) or a
    search (``"search"``) produced it.
    """

    ok: bool
    domain: FiniteGyrogroup = field(repr=False)
    codomain: FiniteGyrogroup = field(repr=False)
    mapping: tuple[int, ...] | None
    path: str
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _is_isomorphism(G1: FiniteGyrogroup, G2: FiniteGyrogroup, mapping: Sequence[int]) -> bool:
    f = np.asarray(mapping, dtype=np.int64)
    if G1.order != G2.order or sorted(f.tolist()) != list(range(G2.order)):
        return False
    return bool((f[G1.entries] == G2.entries[f[:, None], f[None, :]]).all())


def first_iso_check(f: GyroHomomorphism) -> IsoReport:
    """``G/ker f ≅ f(G)`` via ``a⊕ker f -> f(a)``; any failure raises ConsistencyError."""
    G = f.source
    K = kernel(f)
    Q = quotient(G, K)
    img_g, img_members = induced(f.target, image(f))
    local = {x: i for i, x in enumerate(img_members)}
    phi = [-1] * Q.order
    for a in range(G.order):
        X = Q.coset_of(a)
        y = local[f(a)]
        if phi[X] == -1:
            phi[X] = y
        elif phi[X] != y:
            raise ConsistencyError(f"a⊕K -> f(a) is not well defined at coset {X}")
    # f(a) = f(b) iff a⊕K = b⊕K
    for a, b in itertools.product(range(G.order), repeat=2):
        if (f(a) == f(b)) != (Q.coset_of(a) == Q.coset_of(b)):
            raise ConsistencyError(f"kernel equivalences fail at {(a, b)}")
    if not _is_isomorphism(Q.gyrogroup, img_g, phi):
        raise ConsistencyError("induced map G/ker f -> f(G) is not an isomorphism")
    return IsoReport(True, Q.gyrogroup, img_g, tuple(phi), "canonical",
                     {"kernel": K.sorted(), "image": img_members, "quotient_order": Q.order})


def oplus_set(G: FiniteGyrogroup, A, B) -> Subgyrogroup:
    """``A⊕B = {a⊕b}`` for ``A ≤ G`` and normal ``B``."""
    A, B = _members(A), _members(B)
    if not is_subgyrogroup(G, A):
        raise PreconditionError("A is not a subgyrogroup")
    if not is_subgyrogroup(G, B) or not is_normal(G, B):
        raise PreconditionError("B is not a normal subgyrogroup")
    for a in range(G.order):
        left = frozenset(G.add(a, b) for b in B)
        right = frozenset(G.add(b, a) for b in B)
        if left != right:
            raise ConsistencyError(f"a⊕B != B⊕a for a = {a}")
    AB = frozenset(G.add(a, b) for a in A for b in B)
    if not is_subgyrogroup(G, AB):
        raise ConsistencyError("A⊕B is not closed")
    return Subgyrogroup(G, AB)


def _localize(members: Sequence[int], subset: Iterable[int]) -> frozenset[int]:
    local = {x: i for i, x in enumerate(members)}
    return frozenset(local[x] for x in subset)


def second_iso_check(G: FiniteGyrogroup, A, B) -> IsoReport:
    """``(A⊕B)/B ≅ A/(A∩B)`` for ``A ≤ G`` and normal ``B``."""
    A, B = _members(A), _members(B)
    if not is_subgyrogroup(G, A):
        raise PreconditionError("A is not a subgyrogroup")
    if not is_subgyrogroup(G, B) or not is_normal(G, B):
        raise PreconditionError("B is not a normal subgyrogroup")
    AB = oplus_set(G, A, B).members
    AcapB = A & B

    GA, A_idx = induced(G, A)
    QB = quotient(G, B)
    restricted = make_homomorphism(GA, QB.gyrogroup, [QB.coset_of(a) for a in A_idx])
    if {A_idx[i] for i in kernel(restricted).members} != AcapB:
        raise ConsistencyError("kernel of the restricted projection is not A∩B")
    AcapB_local = _localize(A_idx, AcapB)
    if not is_normal(GA, AcapB_local):
        raise ConsistencyError("A∩B is a kernel in A but fails the normality test")

    GAB, AB_idx = induced(G, AB)
    B_local = _localize(AB_idx, B)
    if not is_normal(GAB, B_local):
        raise ConsistencyError("B fails the normality test inside A⊕B")
    Q1 = quotient(GAB, B_local)
    Q2 = quotient(GA, AcapB_local)

    A_pos = {x: i for i, x in enumerate(A_idx)}
    AB_pos = {x: i for i, x in enumerate(AB_idx)}
    phi: list[set[int]] = [set() for _ in range(Q1.order)]
    for a in A:
        for b in B:
            X = Q1.coset_of(AB_pos[G.add(a, b)])
            phi[X].add(Q2.coset_of(A_pos[a]))
    detail = {"A": sorted(A), "B": sorted(B), "A+B": sorted(AB), "A∩B": sorted(AcapB),
              "orders": [Q1.order, Q2.order]}
    if all(len(s) == 1 for s in phi):
        mapping = tuple(next(iter(s)) for s in phi)
        if _is_isomorphism(Q1.gyrogroup, Q2.gyrogroup, mapping):
            return IsoReport(True, Q1.gyrogroup, Q2.gyrogroup, mapping, "canonical", detail)
    found = find_isomorphism(Q1.gyrogroup, Q2.gyrogroup)
    if found is None:
        return IsoReport(False, Q1.gyrogroup, Q2.gyrogroup, None, "search", detail)
    return IsoReport(True, Q1.gyrogroup, Q2.gyrogroup, found.images, "search", detail)


def third_iso_check(G: FiniteGyrogroup, H, K) -> IsoReport:
    """``(G/H)/(K/H) ≅ G/K`` for normal ``H ⊆ K``."""
    H, K = _members(H), _members(K)
    for name, N in (("H", H), ("K", K)):
        if not is_subgyrogroup(G, N) or not is_normal(G, N):
            raise PreconditionError(f"{name} is not a normal subgyrogroup")
    if not H <= K:
        raise PreconditionError("H must be contained in K")
    QH, QK = quotient(G, H), quotient(G, K)
    phi = [-1] * QH.order
    for a in range(G.order):
        X, Y = QH.coset_of(a), QK.coset_of(a)
        if phi[X] not in (-1, Y):
            raise ConsistencyError("a⊕H -> a⊕K is not well defined")
        phi[X] = Y
    induced_map = make_homomorphism(QH.gyrogroup, QK.gyrogroup, phi)
    K_over_H = QH.image_of(K)
    if kernel(induced_map).members != K_over_H:
        raise ConsistencyError("kernel of G/H -> G/K is not K/H")
    if not is_normal(QH.gyrogroup, K_over_H):
        raise ConsistencyError("K/H is a kernel but fails the normality test")
    QQ = quotient(QH.gyrogroup, K_over_H)
    mapping = [-1] * QQ.order
    for X in range(QH.order):
        mapping[QQ.coset_of(X)] = phi[X]
    detail = {"H": sorted(H), "K": sorted(K), "K/H": sorted(K_over_H), "orders": [QQ.order, QK.order]}
    if _is_isomorphism(QQ.gyrogroup, QK.gyrogroup, mapping):
        return IsoReport(True, QQ.gyrogroup, QK.gyrogroup, tuple(mapping), "canonical", detail)
    found = find_isomorphism(QQ.gyrogroup, QK.gyrogroup)
    if found is None:
        return IsoReport(False, QQ.gyrogroup, QK.gyrogroup, None, "search", detail)
    return IsoReport(True, QQ.gyrogroup, QK.gyrogroup, found.images, "search", detail)


@dataclass
class LatticeReport:
    """Correspondence ``K -> K/N`` between subgyrogroups containing N and those of G/N."""

    ok: bool
    correspondence: list[tuple[list[int], list[int]]]
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "correspondence": [{"K": k, "K/N": q} for k, q in self.correspondence],
            "failures": list(self.failures),
        }


def lattice_check(G: FiniteGyrogroup, N) -> LatticeReport:
    N = _members(N)
    if not is_subgyrogroup(G, N) or not is_normal(G, N):
        raise PreconditionError("N is not a normal subgyrogroup")
    Q = quotient(G, N)
    S = [K for K in enumerate_subgyrogroups(G) if N <= K.members]
    T = {H.members for H in enumerate_subgyrogroups(Q.gyrogroup)}
    failures = []
    phi = {K.members: Q.image_of(K.members) for K in S}
    for K, img in phi.items():
        if img not in T:
            failures.append(f"image of {sorted(K)} is not a subgyrogroup of G/N")
    if len(set(phi.values())) != len(phi):
        failures.append("K -> K/N is not injective")
    if set(phi.values()) != T:
        failures.append("K -> K/N is not surjective")
    for K1, K2 in itertools.product(phi, repeat=2):
        if (K1 <= K2) != (phi[K1] <= phi[K2]):
            failures.append(f"inclusion not preserved for {sorted(K1)}, {sorted(K2)}")
    for K, img in phi.items():
        if is_L_subgyrogroup(G, K) != is_L_subgyrogroup(Q.gyrogroup, img):
            failures.append(f"L-property not preserved for {sorted(K)}")
        if is_normal(G, K) != is_normal(Q.gyrogroup, img):
            failures.append(f"normality not preserved for {sorted(K)}")
    corr = [(sorted(K), sorted(img)) for K, img in sorted(phi.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    return LatticeReport(not failures, corr, failures)


# -- backtracking search -------------------------------------------------


def _cycle_length(G: FiniteGyrogroup, x: int) -> int:
    """Length of the orbit of 0 under ``L_x`` (0, x, x⊕x, x⊕(x⊕x), ...)."""
    k, z = 1, x
    while z != 0:
        z = G.add(x, z)
        k += 1
    return k


def _generating_sequence(G: FiniteGyrogroup) -> list[int]:
    from .structure import closure

    lengths = [_cycle_length(G, x) for x in range(G.order)]
    order = sorted(range(1, G.order), key=lambda x: (-lengths[x], x))
    gens: list[int] = []
    span = frozenset({0})
    for x in order:
        if x not in span:
            gens.append(x)
            span = closure(G, span | {x}).members
        if len(span) == G.order:
            break
    return gens


def _search(G: FiniteGyrogroup, H: FiniteGyrogroup, injective: bool) -> Iterator[tuple[int, ...]]:
    """Yield every additive map ``G -> H`` (injective ones only if asked)."""
    n = G.order
    gens = _generating_sequence(G)
    len_g = [_cycle_length(G, x) for x in range(n)]
    len_h = [_cycle_length(H, y) for y in range(H.order)]
    addG, addH, negG, negH = G.add, H.add, G.neg, H.neg
    f = [-1] * n
    used: dict[int, int] = {}
    mapped: list[int] = []

    def assign(x: int, y: int) -> bool:
        queue = [(x, y)]
        while queue:
            u, v = queue.pop()
            if f[u] != -1:
                if f[u] != v:
                    return False
                continue
            if injective and v in used:
                return False
            f[u] = v
            used[v] = u
            snapshot = list(mapped)
            mapped.append(u)
            queue.append((negG(u), negH(v)))
            queue.append((addG(u, u), addH(v, v)))
            for w in snapshot:
                fw = f[w]
                queue.append((addG(u, w), addH(v, fw)))
                queue.append((addG(w, u), addH(fw, v)))
        return True

    def undo(mark: int) -> None:
        while len(mapped) > mark:
            u = mapped.pop()
            used.pop(f[u], None)
            f[u] = -1

    assign(0, 0)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(gens):
            if -1 not in f:
                yield tuple(f)
            return
        g = gens[i]
        if f[g] != -1:
            yield from rec(i + 1)
            return
        for y in range(H.order):
            if injective and (len_h[y] != len_g[g] or y in used):
                continue
            if len_g[g] % len_h[y]:
                continue
            mark = len(mapped)
            if assign(g, y):
                yield from rec(i + 1)
            undo(mark)

    yield from rec(0)


def find_isomorphism(G1: FiniteGyrogroup, G2: FiniteGyrogroup) -> GyroHomomorphism | None:
    """An isomorphism ``G1 -> G2`` or ``None`` after exhausting the search."""
    if G1.order != G2.order:
        return None
    for images in _search(G1, G2, injective=True):
        return make_homomorphism(G1, G2, images)
    return None


def enumerate_homomorphisms(G: FiniteGyrogroup, H: FiniteGyrogroup) -> list[GyroHomomorphism]:
    if G.order * H.order > HOMOMORPHISM_SEARCH_LIMIT:
        raise CapabilityError(f"homomorphism enumeration is limited to |G|·|H| <= {HOMOMORPHISM_SEARCH_LIMIT}")
    return [make_homomorphism(G, H, images) for images in _search(G, H, injective=False)]
