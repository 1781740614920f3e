"""Operations common to every gyrogroup carrier.

A carrier only has to provide an identity, the binary operation and the
inverse. Everything else (gyrations, the cooperation, solutions of linear
equations, translations) is derived here, so finite tables, permutation
gyrogroups and the continuous models share one code path.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .errors import PreconditionError, TableFormatError

__all__ = [
    "GyrogroupOps",
    "TransportedGyrogroup",
    "transport",
    "is_gyrocommutative",
    "gyrocommutativity_witness",
    "check_identities",
    "IDENTITY_LAWS",
]


class GyrogroupOps(ABC):
    """Abstract gyrogroup: subclasses implement ``identity``, ``add`` and ``neg``.

    ``eq`` defaults to ``==``; carriers with floating point elements override
    it with a tolerance they own.
    """

    @abstractmethod
    def identity(self) -> Any: ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    def eq(self, a, b) -> bool:
        return a == b

    def elements(self) -> Sequence:
        """All elements of a finite carrier. Continuous carriers raise."""
        raise PreconditionError(f"{type(self).__name__} is not a finite carrier")

    @property
    def is_finite(self) -> bool:
        try:
            self.elements()
        except PreconditionError:
            return False
        return True

    # derived operations

    def sub(self, a, b):
        """``a ⊖ b``, shorthand for ``a ⊕ (⊖b)``."""
        return self.add(a, self.neg(b))

    def gyr(self, a, b, c):
        """``gyr[a,b]c = ⊖(a⊕b) ⊕ (a⊕(b⊕c))``."""
        return self.add(self.neg(self.add(a, b)), self.add(a, self.add(b, c)))

    def coadd(self, a, b):
        """Cooperation ``a ⊞ b = a ⊕ gyr[a,⊖b]b``."""
        return self.add(a, self.gyr(a, self.neg(b), b))

    def solve_left(self, a, b):
        """The unique ``x`` with ``a ⊕ x = b``."""
        return self.add(self.neg(a), b)

    def solve_right(self, a, b):
        """The unique ``x`` with ``x ⊕ a = b``."""
        return self.coadd(b, self.neg(a))

    def left_translation(self, a) -> Callable:
        return lambda x: self.add(a, x)

    def right_translation(self, a) -> Callable:
        return lambda x: self.add(x, a)


class TransportedGyrogroup(GyrogroupOps):
    """Gyrogroup structure carried over to a set ``X`` along a bijection ``phi: X -> G``.

    The induced operation is ``a ⊕_X b = phi^-1(phi(a) ⊕ phi(b))`` which makes
    ``phi`` an isomorphism by construction.
    """

    def __init__(self, base: GyrogroupOps, phi: Callable, phi_inv: Callable, carrier: Sequence | None = None):
        self.base = base
        self.phi = phi
        self.phi_inv = phi_inv
        self._carrier = None if carrier is None else list(carrier)

    def identity(self):
        return self.phi_inv(self.base.identity())

    def add(self, a, b):
        return self.phi_inv(self.base.add(self.phi(a), self.phi(b)))

    def neg(self, a):
        return self.phi_inv(self.base.neg(self.phi(a)))

    def eq(self, a, b) -> bool:
        return self.base.eq(self.phi(a), self.phi(b))

    def elements(self) -> Sequence:
        if self._carrier is None:
            raise PreconditionError("transported carrier is not finite")
        return self._carrier


def transport(base: GyrogroupOps, phi: Mapping[Hashable, Any] | Callable, phi_inv: Callable | None = None,
              carrier: Iterable | None = None) -> TransportedGyrogroup:
    """Endow a set with the gyrogroup structure of ``base`` via a bijection.

    ``phi`` is either a mapping ``X -> G`` (finite case; bijectivity onto the
    elements of ``base`` is checked and the inverse built) or a callable, in
    which case ``phi_inv`` must be supplied.
    """
    if isinstance(phi, Mapping):
        forward = dict(phi)
        if not base.is_finite:
            raise PreconditionError("mapping form of transport needs a finite base")
        targets = list(forward.values())
        base_elems = list(base.elements())
        if len(set(targets)) != len(targets) or set(targets) != set(base_elems) or len(targets) != len(base_elems):
            raise TableFormatError("transport map is not a bijection onto the base carrier")
        backward = {v: k for k, v in forward.items()}
        return TransportedGyrogroup(base, forward.__getitem__, backward.__getitem__, list(forward))
    if phi_inv is None:
        raise PreconditionError("callable transport needs an explicit inverse")
    if carrier is not None:
        carrier = list(carrier)
        images = [phi(x) for x in carrier]
        if base.is_finite:
            if len(set(images)) != len(images) or set(images) != set(base.elements()):
                raise TableFormatError("transport map is not a bijection onto the base carrier")
        if any(phi_inv(y) != x for x, y in zip(carrier, images)):
            raise TableFormatError("phi_inv is not the inverse of phi on the carrier")
    return TransportedGyrogroup(base, phi, phi_inv, carrier)


def gyrocommutativity_witness(G: GyrogroupOps, pairs: Iterable[tuple] | None = None):
    """First pair violating ``a⊕b = gyr[a,b](b⊕a)``, or ``None``."""
    if pairs is None:
        elems = G.elements()
        pairs = itertools.product(elems, repeat=2)
    for a, b in pairs:
        if not G.eq(G.add(a, b), G.gyr(a, b, G.add(b, a))):
            return (a, b)
    return None


def is_gyrocommutative(G: GyrogroupOps, pairs: Iterable[tuple] | None = None) -> bool:
    """Exhaustive on finite carriers; pass ``pairs`` to sample a continuous one."""
    return gyrocommutativity_witness(G, pairs) is None


def _laws(G: GyrogroupOps):
    add, neg, gyr, eq = G.add, G.neg, G.gyr, G.eq
    e = G.identity()

    def two_sided_identity(a, b, c):
        return eq(add(e, a), a) and eq(add(a, e), a)

    def two_sided_inverse(a, b, c):
        return eq(add(neg(a), a), e) and eq(add(a, neg(a)), e)

    def left_gyroassociative(a, b, c):
        return eq(add(a, add(b, c)), add(add(a, b), gyr(a, b, c)))

    def right_gyroassociative(a, b, c):
        return eq(add(add(a, b), c), add(a, add(b, gyr(b, a, c))))

    def left_loop(a, b, c):
        return eq(gyr(a, b, c), gyr(add(a, b), b, c))

    def right_loop(a, b, c):
        return eq(gyr(a, b, c), gyr(a, add(b, a), c))

    def gyration_is_homomorphism(a, b, c):
        # gyr[a,b](b ⊕ c) against gyr[a,b]b ⊕ gyr[a,b]c; b and c double as the pair
        return eq(gyr(a, b, add(b, c)), add(gyr(a, b, b), gyr(a, b, c)))

    def chained_difference(a, b, c):
        na = neg(a)
        return eq(add(add(na, b), gyr(na, b, add(neg(b), c))), add(na, c))

    def gyrosum_inversion(a, b, c):
        return eq(neg(add(a, b)), gyr(a, b, add(neg(b), neg(a))))

    def gyration_even(a, b, c):
        return eq(gyr(neg(a), neg(b), c), gyr(a, b, c))

    def gyration_inversive_symmetric(a, b, c):
        return eq(gyr(b, a, gyr(a, b, c)), c)

    def left_cancellation(a, b, c):
        return eq(add(neg(a), add(a, b)), b)

    def right_cancellation_1(a, b, c):
        return eq(G.coadd(G.sub(b, a), a), b)

    def right_cancellation_2(a, b, c):
        return eq(add(G.coadd(b, neg(a)), a), b)

    def general_left_cancellation(a, b, c):
        return (not eq(add(a, b), add(a, c))) or eq(b, c)

    def left_equation(a, b, c):
        return eq(add(a, G.solve_left(a, b)), b)

    def right_equation(a, b, c):
        return eq(add(G.solve_right(a, b), a), b)

    return {
        "g1": two_sided_identity,
        "g2": two_sided_inverse,
        "g3": gyration_is_homomorphism,
        "g3a": left_gyroassociative,
        "g3b": right_gyroassociative,
        "g4a": left_loop,
        "g4b": right_loop,
        "chained_difference": chained_difference,
        "gyrosum_inversion": gyrosum_inversion,
        "gyration_even": gyration_even,
        "gyration_inversive_symmetric": gyration_inversive_symmetric,
        "left_cancellation": left_cancellation,
        "general_left_cancellation": general_left_cancellation,
        "right_cancellation_1": right_cancellation_1,
        "right_cancellation_2": right_cancellation_2,
        "left_equation": left_equation,
        "right_equation": right_equation,
    }


IDENTITY_LAWS = (
    "g1", "g2", "g3", "g3a", "g3b", "g4a", "g4b",
    "chained_difference", "gyrosum_inversion", "gyration_even", "gyration_inversive_symmetric",
    "left_cancellation", "general_left_cancellation", "right_cancellation_1", "right_cancellation_2",
    "left_equation", "right_equation",
)


def check_identities(G: GyrogroupOps, triples: Iterable[tuple] | None = None,
                     laws: Iterable[str] | None = None, max_witnesses: int = 5) -> dict[str, list[tuple]]:
    """Evaluate the standard gyrogroup identities on triples ``(a, b, c)``.

    Laws quantified over fewer variables ignore the extra coordinates. With
    ``triples=None`` the carrier must be finite and every triple is tried.
    Returns ``{law: [witness triples]}``; every list empty means no violation.
    """
    table = _laws(G)
    names = list(table) if laws is None else list(laws)
    unknown = set(names) - set(table)
    if unknown:
        raise PreconditionError(f"unknown laws: {sorted(unknown)}")
    if triples is None:
        triples = itertools.product(G.elements(), repeat=3)
    found: dict[str, list[tuple]] = {name: [] for name in names}
    for t in triples:
        for name in names:
            if len(found[name]) < max_witnesses and not table[name](*t):
                found[name].append(tuple(t))
    return found
