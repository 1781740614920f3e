"""Dense permutations of ``{0, ..., n-1}``.

Composition is right to left: ``p * q`` is ``p o q``, i.e. apply ``q`` first.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import TableFormatError

__all__ = ["Permutation", "parse_cycles"]


class Permutation:
    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise TableFormatError(f"not a bijection of 0..{n - 1}: {images}")
        self._images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # caller guarantees ``images`` is a tuple forming a bijection
        self = object.__new__(cls)
        self._images = images
        self._hash = hash(images)
        return self

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for i, x in enumerate(cycle):
                if not 0 <= x < n or x in seen:
                    raise TableFormatError(f"bad cycle entry {x} for degree {n}")
                seen.add(x)
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __len__(self) -> int:
        return len(self._images)

    def __iter__(self):
        return iter(self._images)

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        mine = self._images
        return Permutation._trusted(tuple([mine[x] for x in other._images]))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for x, y in enumerate(self._images):
            inv[y] = x
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self._images))

    def fixes(self, x: int) -> bool:
        return self._images[x] == x

    def image_of(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self._images[x] for x in subset)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element, sorted."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self._images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self._images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self._images[x]
            out.append(tuple(cycle))
        return out

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def one_line(self) -> str:
        return " ".join(map(str, self._images))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()}, degree={self.degree})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(8 9)(10 11)"`` into a permutation of degree n."""
    stripped = text.strip()
    if _CYCLE.sub("", stripped).strip():
        raise TableFormatError(f"unparseable cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(stripped):
        tokens = body.replace(",", " ").split()
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError as exc:
            raise TableFormatError(f"non-integer token in cycle {body!r}") from exc
    return Permutation.from_cycles(n, [c for c in cycles if c])
