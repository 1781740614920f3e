"""The gyrogroup structure on the symmetric group of a finite gyrogroup.

Every permutation ``σ`` of G factors uniquely as ``σ = L_a ∘ ρ`` with
``a = σ(0)`` and ``ρ`` fixing 0. On factored permutations

    (L_a ∘ γ) ⊕ (L_b ∘ δ) = L_{a⊕b} ∘ (γ ∘ δ)

turns Sym(G) into a gyrogroup containing ``{L_a}`` as a copy of G.
Elements are kept in factored form so Sym(G) is never enumerated except for
tiny G.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import GyrogroupOps
from .errors import CapabilityError, PreconditionError
from .finite import AxiomReport, FiniteGyrogroup, is_automorphism, verify_axioms
from .perm import Permutation

__all__ = [
    "SymGyroElement",
    "SymGyrogroup",
    "commutation_check",
    "composition_law_check",
    "embed",
    "embedding_check",
    "factorize",
    "sym_add",
    "sym_gyr",
    "sym_neg",
    "translation_form_check",
    "verify_sym_gyrogroup",
]

EXHAUSTIVE_LIMIT = 4


@dataclass(frozen=True)
class SymGyroElement:
    """A permutation together with its factorization ``perm = L_a ∘ rho``."""

    perm: Permutation
    a: int
    rho: Permutation

    def __repr__(self) -> str:
        return f"SymGyroElement(a={self.a}, rho={self.rho.cycle_notation()})"


def _translation(G: FiniteGyrogroup, a: int) -> Permutation:
    return G.left_translation(a)


def factorize(G: FiniteGyrogroup, perm: Permutation | list[int] | tuple[int, ...]) -> SymGyroElement:
    """Split ``perm`` as ``L_a ∘ rho`` with ``a = perm(0)`` and ``rho = L_{⊖a} ∘ perm``."""
    if not isinstance(perm, Permutation):
        perm = Permutation(perm)
    if perm.degree != G.order:
        raise PreconditionError(f"permutation degree {perm.degree} != order {G.order}")
    a = perm(0)
    rho = _translation(G, G.neg(a)) * perm
    assert rho.fixes(0)
    return SymGyroElement(perm, a, rho)


def _compose(G: FiniteGyrogroup, a: int, rho: Permutation) -> SymGyroElement:
    if not rho.fixes(0):
        raise PreconditionError("stabilizer part must fix 0")
    return SymGyroElement(_translation(G, a) * rho, a, rho)


def sym_add(G: FiniteGyrogroup, sigma: SymGyroElement, tau: SymGyroElement) -> SymGyroElement:
    return _compose(G, G.add(sigma.a, tau.a), sigma.rho * tau.rho)


def sym_neg(G: FiniteGyrogroup, sigma: SymGyroElement) -> SymGyroElement:
    """Left inverse ``L_{⊖a} ∘ γ^-1`` of ``σ = L_a ∘ γ``."""
    return _compose(G, G.neg(sigma.a), sigma.rho.inverse())


def sym_gyr(G: FiniteGyrogroup, sigma: SymGyroElement, tau: SymGyroElement, rho: SymGyroElement) -> SymGyroElement:
    """Closed form ``gyr[σ,τ](L_c ∘ λ) = L_{gyr[a,b]c} ∘ λ``."""
    return _compose(G, G.gyr(sigma.a, tau.a, rho.a), rho.rho)


def embed(G: FiniteGyrogroup, a: int) -> SymGyroElement:
    return SymGyroElement(_translation(G, a), a, Permutation.identity(G.order))


class SymGyrogroup(GyrogroupOps):
    """Sym(G) as a :class:`GyrogroupOps` carrier; ``gyr`` comes from the gyrator identity."""

    def __init__(self, G: FiniteGyrogroup):
        self.base = G

    def identity(self) -> SymGyroElement:
        return embed(self.base, 0)

    def add(self, sigma, tau):
        return sym_add(self.base, sigma, tau)

    def neg(self, sigma):
        return sym_neg(self.base, sigma)

    def eq(self, sigma, tau) -> bool:
        return sigma.perm == tau.perm

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> list[SymGyroElement]:
        n = self.base.order
        if n > EXHAUSTIVE_LIMIT:
            raise CapabilityError(f"Sym(G) is only enumerated for |G| <= {EXHAUSTIVE_LIMIT}")
        # identity first so it lands at index 0 of any table built from this list
        return [factorize(self.base, p) for p in itertools.permutations(range(n))]

    def element(self, perm) -> SymGyroElement:
        return factorize(self.base, perm)


def composition_law_check(G: FiniteGyrogroup) -> bool:
    """``L_a ∘ L_b = L_{a⊕b} ∘ gyr[a,b]`` for every pair."""
    L = [G.left_translation(a) for a in range(G.order)]
    return all(
        L[a] * L[b] == L[G.add(a, b)] * G.gyration(a, b)
        for a in range(G.order)
        for b in range(G.order)
    )


def translation_form_check(G: FiniteGyrogroup) -> bool:
    """``gyr[a,b] = L_{⊖(a⊕b)} ∘ L_a ∘ L_b`` and ``L_{⊖a} = L_a^-1``."""
    L = [G.left_translation(a) for a in range(G.order)]
    if any(L[G.neg(a)] != L[a].inverse() for a in range(G.order)):
        return False
    return all(
        G.gyration(a, b) == L[G.neg(G.add(a, b))] * L[a] * L[b]
        for a in range(G.order)
        for b in range(G.order)
    )


def commutation_check(G: FiniteGyrogroup, rho: Permutation) -> bool:
    """``ρ ∘ L_a = L_{ρ(a)} ∘ ρ`` for all a; ``ρ`` must be an automorphism of G."""
    if not is_automorphism(G, rho):
        raise PreconditionError("commutation relation needs an automorphism")
    return all(
        rho * G.left_translation(a) == G.left_translation(rho(a)) * rho for a in range(G.order)
    )


def embedding_check(G: FiniteGyrogroup) -> bool:
    """``a -> L_a`` is injective and ``L_a ⊕ L_b = L_{a⊕b}`` in Sym(G)."""
    images = [embed(G, a) for a in range(G.order)]
    if len({e.perm for e in images}) != G.order:
        return False
    return all(
        sym_add(G, images[a], images[b]).perm == images[G.add(a, b)].perm
        for a in range(G.order)
        for b in range(G.order)
    )


def _exhaustive(G: FiniteGyrogroup) -> AxiomReport:
    S = SymGyrogroup(G)
    elems = S.elements()
    index = {e.perm: i for i, e in enumerate(elems)}
    table = [[index[S.add(s, t).perm] for t in elems] for s in elems]
    report = verify_axioms(table)
    report.samples = len(elems) ** 3
    # closed-form gyrations must match the gyrator identity computed in the table
    report.checked.append("consistency:closed-form")
    bad = 0
    for (i, s), (j, t), (k, r) in itertools.product(enumerate(elems), repeat=3):
        if index[sym_gyr(G, s, t, r).perm] != index[S.gyr(s, t, r).perm]:
            if bad < 8:
                report.violations.append(("consistency:closed-form", (i, j, k)))
            bad += 1
    return report


def _random_element(G: FiniteGyrogroup, rng: np.random.Generator) -> SymGyroElement:
    return factorize(G, Permutation(rng.permutation(G.order).tolist()))


def _sampled(G: FiniteGyrogroup, samples: int, seed: int) -> AxiomReport:
    S = SymGyrogroup(G)
    rng = np.random.default_rng(seed)
    report = AxiomReport(order=G.order)
    report.seed, report.samples = seed, samples
    ident = S.identity()
    checks = {
        "G1": lambda s, t, r, m: S.add(ident, s).perm == s.perm,
        "G2": lambda s, t, r, m: S.add(S.neg(s), s).perm == ident.perm,
        "G3-auto": lambda s, t, r, m: (
            S.gyr(s, t, S.add(r, m)).perm == S.add(S.gyr(s, t, r), S.gyr(s, t, m)).perm
            and S.gyr(t, s, S.gyr(s, t, r)).perm == r.perm
        ),
        "G3-assoc": lambda s, t, r, m: S.add(s, S.add(t, r)).perm == S.add(S.add(s, t), S.gyr(s, t, r)).perm,
        "G4": lambda s, t, r, m: S.gyr(s, t, r).perm == S.gyr(S.add(s, t), t, r).perm,
        "consistency:closed-form": lambda s, t, r, m: sym_gyr(G, s, t, r).perm == S.gyr(s, t, r).perm,
    }
    report.checked.extend(checks)
    for i in range(samples):
        s, t, r, m = (_random_element(G, rng) for _ in range(4))
        for name, law in checks.items():
            if not law(s, t, r, m) and len(report.witnesses(name)) < 8:
                report.violations.append((name, (i,)))
    return report


def verify_sym_gyrogroup(G: FiniteGyrogroup, mode: str = "exhaustive", samples: int = 10_000,
                         seed: int = 0) -> AxiomReport:
    """Check the gyrogroup axioms on Sym(G).

    ``mode="exhaustive"`` builds the full Cayley table of Sym(G) (so
    ``|G| <= 4``) and runs :func:`verify_axioms` on it. ``mode="sampled"``
    draws ``samples`` seeded random triples (plus a fourth element for the
    automorphism test); witnesses are then sample indices.
    """
    if mode == "exhaustive":
        if G.order > EXHAUSTIVE_LIMIT:
            raise CapabilityError(f"exhaustive Sym(G) check needs |G| <= {EXHAUSTIVE_LIMIT}; use mode='sampled'")
        return _exhaustive(G)
    if mode == "sampled":
        if samples < 1:
            raise PreconditionError("need at least one sample")
        return _sampled(G, samples, seed)
    raise PreconditionError(f"unknown mode {mode!r}")
