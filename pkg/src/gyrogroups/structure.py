"""Subgyrogroups, L-subgyrogroups, the relation ~_H and left cosets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import CapabilityError, PreconditionError
from .finite import FiniteGyrogroup

__all__ = [
    "CosetDecomposition",
    "LagrangeRecord",
    "Subgyrogroup",
    "closure",
    "cosets_partition",
    "enumerate_subgyrogroups",
    "equivalence_classes",
    "is_L_subgyrogroup",
    "is_subgyrogroup",
    "l_witness",
    "lagrange_check",
    "left_coset",
    "sim_H",
]

ENUMERATION_LIMIT = 64


@dataclass(frozen=True)
class Subgyrogroup:
    """A subset of a finite gyrogroup closed under ⊕ and ⊖.

    Build instances through :meth:`of` (which checks closure) or
    :func:`closure`; the raw constructor trusts its input.
    """

    parent: FiniteGyrogroup = field(compare=False, repr=False)
    members: frozenset[int]

    @classmethod
    def of(cls, G: FiniteGyrogroup, subset: Iterable[int]) -> Subgyrogroup:
        members = frozenset(int(x) for x in subset)
        if not is_subgyrogroup(G, members):
            raise PreconditionError(f"{sorted(members)} is not closed under ⊕ and ⊖")
        return cls(G, members)

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: Subgyrogroup) -> bool:
        return self.members <= other.members

    def __repr__(self) -> str:
        return f"Subgyrogroup({{{', '.join(map(str, self.sorted()))}}})"


def _members(H) -> frozenset[int]:
    return H.members if isinstance(H, Subgyrogroup) else frozenset(int(x) for x in H)


def _require_sub(G: FiniteGyrogroup, H) -> frozenset[int]:
    members = _members(H)
    if not is_subgyrogroup(G, members):
        raise PreconditionError(f"{sorted(members)} is not a subgyrogroup")
    return members


def is_subgyrogroup(G: FiniteGyrogroup, subset: Iterable[int]) -> bool:
    """Closed under ⊖ and ⊕; the empty set is rejected."""
    members = _members(subset)
    if not members:
        raise PreconditionError("a subgyrogroup must be nonempty")
    if not all(0 <= x < G.order for x in members):
        raise PreconditionError("subset leaves the carrier")
    if any(G.neg(a) not in members for a in members):
        return False
    return all(G.add(a, b) in members for a in members for b in members)


def closure(G: FiniteGyrogroup, generators: Iterable[int]) -> Subgyrogroup:
    """Smallest subgyrogroup containing ``generators``."""
    members = {0, *generators}
    frontier = list(members)
    while frontier:
        new = set()
        for a in frontier:
            na = G.neg(a)
            if na not in members:
                new.add(na)
            for b in list(members):
                for c in (G.add(a, b), G.add(b, a)):
                    if c not in members:
                        new.add(c)
        members |= new
        frontier = list(new)
    return Subgyrogroup(G, frozenset(members))


def enumerate_subgyrogroups(G: FiniteGyrogroup) -> list[Subgyrogroup]:
    """All subgyrogroups, sorted by size then by sorted member list.

    Closes every generator set of size at most two, then joins pairs of
    known subgyrogroups until nothing new appears.
    """
    if G.order > ENUMERATION_LIMIT:
        raise CapabilityError(
            f"exhaustive enumeration is limited to order {ENUMERATION_LIMIT}; test explicit subsets with is_subgyrogroup"
        )
    found: dict[frozenset[int], Subgyrogroup] = {}
    for gens in itertools.combinations_with_replacement(range(G.order), 2):
        H = closure(G, gens)
        found.setdefault(H.members, H)
    frontier = list(found)
    while frontier:
        new = []
        known = list(found)
        for A in frontier:
            for B in known:
                if A <= B or B <= A:
                    continue
                J = closure(G, A | B)
                if J.members not in found:
                    found[J.members] = J
                    new.append(J.members)
        frontier = new
    return sorted(found.values(), key=lambda H: (H.order, H.sorted()))


def l_witness(G: FiniteGyrogroup, H) -> tuple[int, int, frozenset[int]] | None:
    """First ``(a, h, gyr[a,h](H))`` with ``gyr[a,h](H) != H``, else ``None``."""
    members = _require_sub(G, H)
    idx = sorted(members)
    gy = G.gyration_array()
    for a in range(G.order):
        for h in idx:
            image = frozenset(gy[a, h, idx].tolist())
            if image != members:
                return a, h, image
    return None


def is_L_subgyrogroup(G: FiniteGyrogroup, H) -> bool:
    """``gyr[a,h](H) = H`` for every ``a`` in G and ``h`` in H."""
    return l_witness(G, H) is None


def sim_H(G: FiniteGyrogroup, H, a: int, b: int) -> bool:
    """``a ~_H b`` iff ``⊖a⊕b ∈ H`` and ``gyr[⊖a,b](H) = H``."""
    members = _members(H)
    na = G.neg(a)
    if G.add(na, b) not in members:
        return False
    return frozenset(G.gyr(na, b, h) for h in members) == members


def left_coset(G: FiniteGyrogroup, a: int, H) -> frozenset[int]:
    row = G.entries[a]
    return frozenset(int(row[h]) for h in _members(H))


@dataclass
class CosetDecomposition:
    """Classes of elements, each with a representative.

    For ``~_H`` classes the representative is the least member; for left
    cosets it is the least ``a`` with ``a⊕H`` equal to the class (the two
    agree when the cosets partition G). ``overlaps`` lists pairs of
    representatives whose classes meet without being equal; it is empty
    whenever ``is_partition`` holds.
    """

    subgroup: Subgyrogroup
    classes: list[frozenset[int]]
    representatives: list[int]
    is_partition: bool
    overlaps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def index(self) -> int:
        return len(self.classes)

    def class_of(self, x: int) -> int:
        """Position of the (first) class containing ``x``."""
        for i, c in enumerate(self.classes):
            if x in c:
                return i
        raise KeyError(x)

    def to_dict(self) -> dict:
        return {
            "subgroup": self.subgroup.sorted(),
            "is_partition": self.is_partition,
            "index": self.index,
            "classes": [{"representative": r, "members": sorted(c)} for r, c in zip(self.representatives, self.classes)],
            "overlaps": [list(p) for p in self.overlaps],
        }


def _sorted_classes(classes: Iterable[frozenset[int]]) -> tuple[list[frozenset[int]], list[int]]:
    ordered = sorted(set(classes), key=lambda c: (min(c), sorted(c)))
    return ordered, [min(c) for c in ordered]


def _is_partition(n: int, classes: list[frozenset[int]], reps: list[int]) -> tuple[bool, list[tuple[int, int]]]:
    overlaps = [
        (reps[i], reps[j]) for i, j in itertools.combinations(range(len(classes)), 2) if classes[i] & classes[j]
    ]
    covered = set().union(*classes) if classes else set()
    return (not overlaps and covered == set(range(n))), overlaps


def equivalence_classes(G: FiniteGyrogroup, H) -> CosetDecomposition:
    """Partition of G into ``~_H`` classes."""
    members = _require_sub(G, H)
    sub = H if isinstance(H, Subgyrogroup) else Subgyrogroup(G, members)
    remaining = set(range(G.order))
    classes = []
    while remaining:
        a = min(remaining)
        cls = frozenset(b for b in range(G.order) if sim_H(G, members, a, b))
        classes.append(cls)
        remaining -= cls
    classes, reps = _sorted_classes(classes)
    ok, overlaps = _is_partition(G.order, classes, reps)
    return CosetDecomposition(sub, classes, reps, ok, overlaps)


def cosets_partition(G: FiniteGyrogroup, H) -> CosetDecomposition:
    """All distinct left cosets ``a⊕H`` and whether they partition G."""
    members = _require_sub(G, H)
    sub = H if isinstance(H, Subgyrogroup) else Subgyrogroup(G, members)
    generator: dict[frozenset[int], int] = {}
    for a in range(G.order):
        generator.setdefault(left_coset(G, a, members), a)
    classes, _ = _sorted_classes(generator)
    reps = [generator[c] for c in classes]
    ok, overlaps = _is_partition(G.order, classes, reps)
    return CosetDecomposition(sub, classes, reps, ok, overlaps)


@dataclass(frozen=True)
class LagrangeRecord:
    divides: bool
    index: int
    product_ok: bool

    @property
    def holds(self) -> bool:
        return self.divides and self.product_ok


def lagrange_check(G: FiniteGyrogroup, H) -> LagrangeRecord:
    """``|H|`` divides ``|G|`` and ``|G| = [G:H]|H|`` for an L-subgyrogroup H."""
    members = _require_sub(G, H)
    if not is_L_subgyrogroup(G, members):
        raise PreconditionError("Lagrange's relation is only guaranteed for L-subgyrogroups")
    dec = cosets_partition(G, members)
    return LagrangeRecord(
        divides=G.order % len(members) == 0,
        index=dec.index,
        product_ok=G.order == dec.index * len(members),
    )
