"""Coprime commutator sets gamma*_k and delta*_k.

gamma*_1-commutators and delta*_0-commutators are all elements of G.  For
k >= 2 a gamma*_k-commutator is ``[a, b]`` with ``a`` a power of a
gamma*_{k-1}-commutator, ``b`` ANY element, and ``gcd(|a|, |b|) = 1``.  For
k >= 1 a delta*_k-commutator is ``[a, b]`` with BOTH ``a`` and ``b`` powers
of delta*_{k-1}-commutators and ``gcd(|a|, |b|) = 1``.  The identity is a
member of every level (``[1, 1]``).
"""

from __future__ import annotations

import numpy as np

from .group import ElementSet, GroupTable, subgroup_generated

__all__ = [
    "GAMMA",
    "DELTA",
    "CoprimeSetChain",
    "chain",
    "power_closure",
    "gamma_star_set",
    "delta_star_set",
    "gamma_star_subgroup",
    "delta_star_subgroup",
    "coprime_commutators",
]

GAMMA = "gamma_star"
DELTA = "delta_star"


def power_closure(S: ElementSet) -> ElementSet:
    """Union of the cyclic subgroups <s>, s in S."""
    G = S.parent
    mul = G.mul
    base = S.indices
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if base.size:
        cur = base.copy()
        for _ in range(int(G.order_cache[base].max())):
            mask[cur] = True
            cur = mul[cur, base]
    return ElementSet(G, mask)


def coprime_commutators(G: GroupTable, A: ElementSet, B: ElementSet) -> ElementSet:
    """{[a, b] : a in A, b in B, gcd(|a|, |b|) = 1}."""
    a, b = A.indices, B.indices
    block = G.comm[np.ix_(a, b)]
    ok = G.coprime[np.ix_(a, b)]
    return ElementSet.from_indices(G, np.unique(block[ok]))


class CoprimeSetChain:
    """Levels of one family for one group, built incrementally on demand.

    ``level(k)`` is the set of gamma*_k- (k >= 1) or delta*_k- (k >= 0)
    commutators; ``powers(k)`` is its power closure.
    """

    def __init__(self, G: GroupTable, family: str):
        if family not in (GAMMA, DELTA):
            raise ValueError(f"unknown family {family!r}")
        self.parent = G
        self.family = family
        self.first = 1 if family == GAMMA else 0
        self.levels: list[ElementSet] = [G.whole()]
        self.power_closures: list[ElementSet] = [G.whole()]

    def _extend(self):
        G = self.parent
        pool = self.power_closures[-1]
        right = G.whole() if self.family == GAMMA else pool
        nxt = coprime_commutators(G, pool, right)
        self.levels.append(nxt)
        self.power_closures.append(power_closure(nxt))

    def _slot(self, k: int) -> int:
        if k < self.first:
            raise ValueError(f"{self.family} level must be >= {self.first}, got {k}")
        j = k - self.first
        while len(self.levels) <= j:
            self._extend()
        return j

    def level(self, k: int) -> ElementSet:
        return self.levels[self._slot(k)]

    def powers(self, k: int) -> ElementSet:
        return self.power_closures[self._slot(k)]

    def subgroup(self, k: int) -> ElementSet:
        key = (self.family, "subgroup", k)
        cache = self.parent.cache
        if key not in cache:
            cache[key] = subgroup_generated(self.parent, self.level(k))
        return cache[key]


def chain(G: GroupTable, family: str) -> CoprimeSetChain:
    """The memoized chain for (G, family)."""
    key = ("coprime_chain", family)
    if key not in G.cache:
        G.cache[key] = CoprimeSetChain(G, family)
    return G.cache[key]


def gamma_star_set(G: GroupTable, k: int) -> ElementSet:
    return chain(G, GAMMA).level(k)


def delta_star_set(G: GroupTable, k: int) -> ElementSet:
    return chain(G, DELTA).level(k)


def gamma_star_subgroup(G: GroupTable, k: int) -> ElementSet:
    return chain(G, GAMMA).subgroup(k)


def delta_star_subgroup(G: GroupTable, k: int) -> ElementSet:
    return chain(G, DELTA).subgroup(k)
