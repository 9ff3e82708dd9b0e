"""Permutations of {0, ..., n-1}.

Convention: permutations act on the RIGHT.  The product ``p * q`` (also
``compose(p, q)``) first applies ``p`` and then ``q``, so it maps
``i -> q(p(i))``.  With this convention the conjugate ``x^g`` is
``g^-1 * x * g`` and the commutator ``[a, b]`` is ``a^-1 * b^-1 * a * b``.

Points are 0-based internally.  Cycle notation (parsing and printing) is
1-based, e.g. ``"(1 2 3)(4 5)"``.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "PermutationError",
    "CycleParseError",
    "compose",
    "inverse",
    "order",
    "parse_cycles",
    "format_cycles",
]


class PermutationError(ValueError):
    pass


class CycleParseError(PermutationError):
    pass


class Permutation:
    """An immutable bijection on ``range(degree)``.

    ``images[i]`` is the image of point ``i``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(i) for i in images)
        if check:
            if not images:
                raise PermutationError("degree must be at least 1")
            if sorted(images) != list(range(len(images))):
                raise PermutationError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __reduce__(self):
        return (Permutation, (self.images, False))

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise PermutationError("degree must be at least 1")
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based disjoint cycles."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise PermutationError(f"point {a} outside 0..{degree - 1}")
                if a in seen:
                    raise PermutationError(f"point {a} repeated")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return self._hash

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, m: int) -> Permutation:
        if m < 0:
            return inverse(self) ** (-m)
        result = Permutation.identity(self.degree)
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point,
        ordered by smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        seen = [False] * self.degree
        lengths = []
        for start in range(self.degree):
            if seen[start]:
                continue
            n = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                n += 1
            lengths.append(n)
        return lengths

    def order(self) -> int:
        return order(self)

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``: ``i -> q(p(i))``."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation([qi[i] for i in p.images], check=False)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(inv, check=False)


def order(p: Permutation) -> int:
    """Least m >= 1 with p^m = identity (lcm of the cycle lengths)."""
    return reduce(math.lcm, p.cycle_lengths(), 1)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(a + 1) for a in cyc) + ")" for cyc in cycles)


_TOKEN = re.compile(r"\s*(\(|\)|\d+|id\b|[^\s()\d]+)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``"(1 2 3)(4 5)"``.

    ``"()"``, ``"id"`` and the empty string denote the identity.  Commas
    between points are tolerated.
    """
    if degree < 1:
        raise CycleParseError("degree must be at least 1")
    src = text.strip()
    if src in ("", "id", "()"):
        return Permutation.identity(degree)
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen: set[int] = set()
    pos = 0
    src = src.replace(",", " ")
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise CycleParseError(f"nested '(' at offset {m.start(1)} in {text!r}")
            current = []
        elif tok == ")":
            if current is None:
                raise CycleParseError(f"unmatched ')' at offset {m.start(1)} in {text!r}")
            cycles.append(current)
            current = None
        elif tok.isdigit():
            if current is None:
                raise CycleParseError(f"point {tok!r} outside parentheses in {text!r}")
            point = int(tok)
            if not 1 <= point <= degree:
                raise CycleParseError(f"point {tok!r} out of range 1..{degree} in {text!r}")
            if point in seen:
                raise CycleParseError(f"repeated point {tok!r} in {text!r}")
            seen.add(point)
            current.append(point - 1)
        else:
            raise CycleParseError(f"unexpected token {tok!r} in {text!r}")
    if current is not None:
        raise CycleParseError(f"unclosed '(' in {text!r}")
    return Permutation.from_cycles(cycles, degree)
