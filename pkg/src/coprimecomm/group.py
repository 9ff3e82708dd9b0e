"""Materialized finite permutation groups and their subgroup structure.

A :class:`GroupTable` holds every element of a group, indexed in BFS order
from the identity (index 0).  Subsets of the group are :class:`ElementSet`
values: boolean masks over those indices.  All structural computations
(commutator subgroups, series, Fitting subgroup, ...) are carried out on the
Cayley table with numpy, which is built lazily on first use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, PermutationError

__all__ = [
    "GroupError",
    "BudgetExceeded",
    "NotSolubleError",
    "ParentMismatch",
    "GroupTable",
    "ElementSet",
    "SeriesReport",
    "Quotient",
    "DEFAULT_BUDGET",
    "TABLE_LIMIT",
    "close",
    "subgroup_generated",
    "normal_closure",
    "commutator_subgroup",
    "lower_central_series",
    "derived_series",
    "lower_fitting_series",
    "is_nilpotent",
    "is_soluble",
    "is_abelian",
    "is_normal",
    "is_simple",
    "nilpotent_residual",
    "fitting_height",
    "fitting_subgroup",
    "o_pi",
    "center",
    "centralizer",
    "normalizer",
    "quotient",
    "coprime_action_decomposition_check",
    "conjugacy_classes",
    "prime_divisors",
]

DEFAULT_BUDGET = 200_000
# Cayley tables are |G|^2 int32 entries.
TABLE_LIMIT = 6_000


class GroupError(Exception):
    pass


class BudgetExceeded(GroupError):
    pass


class NotSolubleError(GroupError):
    pass


class ParentMismatch(GroupError):
    """An ElementSet was used with a group it does not belong to."""


def prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class GroupTable:
    """A finite permutation group with all of its elements enumerated.

    Do not construct directly; use :func:`close`.  Instances are immutable
    apart from memoized derived data.
    """

    def __init__(self, degree, generators, perms, right_gen, parent, parent_gen, name=None):
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.name = name
        self._perms = perms
        self._perms.flags.writeable = False
        self._index = {perms[i].tobytes(): i for i in range(len(perms))}
        self._right_gen = right_gen
        self._parent = parent
        self._parent_gen = parent_gen
        self._elements: list[Permutation] | None = None
        self.order_cache = np.array(
            [_perm_order(perms[i]) for i in range(len(perms))], dtype=np.int64
        )
        self.order_cache.flags.writeable = False
        self.cache: dict = {}

    def __len__(self):
        return len(self._perms)

    @property
    def order(self) -> int:
        return len(self._perms)

    def __repr__(self):
        label = self.name or "group"
        return f"<GroupTable {label}: order {self.order}, degree {self.degree}>"

    @property
    def elements(self) -> list[Permutation]:
        if self._elements is None:
            self._elements = [Permutation(row.tolist(), check=False) for row in self._perms]
        return self._elements

    def element(self, i: int) -> Permutation:
        return self.elements[i]

    def index(self, p: Permutation) -> int:
        if p.degree != self.degree:
            raise PermutationError(f"degree mismatch: {p.degree} vs {self.degree}")
        key = np.asarray(p.images, dtype=self._perms.dtype).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise GroupError(f"{p} is not an element of {self!r}") from None

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return np.asarray(p.images, dtype=self._perms.dtype).tobytes() in self._index

    @property
    def generator_indices(self) -> list[int]:
        return [self.index(g) for g in self.generators]

    @property
    def prime_set(self) -> list[int]:
        """pi(G): primes dividing |G|."""
        return prime_divisors(self.order)

    # -- tables ---------------------------------------------------------

    @property
    def mul(self) -> np.ndarray:
        """Cayley table: ``mul[a, b]`` is the index of ``a * b``."""
        t = self.cache.get("mul")
        if t is None:
            n = self.order
            if n > TABLE_LIMIT:
                raise BudgetExceeded(
                    f"Cayley table for order {n} exceeds the table limit {TABLE_LIMIT}"
                )
            # row b of rows is column b of the table: x -> x * e_b.
            # e_b = e_parent * gen, so x * e_b = (x * e_parent) * gen.
            rows = np.empty((n, n), dtype=np.int32)
            rows[0] = np.arange(n, dtype=np.int32)
            for b in range(1, n):
                rows[b] = self._right_gen[rows[self._parent[b]], self._parent_gen[b]]
            t = np.ascontiguousarray(rows.T)
            t.flags.writeable = False
            self.cache["mul"] = t
        return t

    @property
    def inv(self) -> np.ndarray:
        t = self.cache.get("inv")
        if t is None:
            t = np.argmax(self.mul == 0, axis=1).astype(np.int32)
            t.flags.writeable = False
            self.cache["inv"] = t
        return t

    @property
    def comm(self) -> np.ndarray:
        """``comm[a, b]`` is the index of ``[a, b] = a^-1 b^-1 a b``."""
        t = self.cache.get("comm")
        if t is None:
            mul, inv = self.mul, self.inv
            left = mul[np.ix_(inv, inv)]
            t = mul[left, mul]
            t.flags.writeable = False
            self.cache["comm"] = t
        return t

    @property
    def coprime(self) -> np.ndarray:
        """``coprime[a, b]`` is true iff gcd(|a|, |b|) = 1."""
        t = self.cache.get("coprime")
        if t is None:
            o = self.order_cache
            t = np.gcd(o[:, None], o[None, :]) == 1
            t.flags.writeable = False
            self.cache["coprime"] = t
        return t

    def conj(self, x, g):
        """Index (or array of indices) of ``x^g = g^-1 x g``."""
        mul = self.mul
        return mul[mul[self.inv[g], x], g]

    def power(self, x: int, m: int) -> int:
        return self.index(self.element(x) ** m)

    # -- sets -----------------------------------------------------------

    def whole(self) -> ElementSet:
        return ElementSet(self, np.ones(self.order, dtype=bool), is_subgroup=True)

    def trivial(self) -> ElementSet:
        return ElementSet.from_indices(self, [0], is_subgroup=True)

    def subset(self, items: Iterable, is_subgroup: bool = False) -> ElementSet:
        """ElementSet from element indices or Permutations."""
        idx = [self.index(x) if isinstance(x, Permutation) else int(x) for x in items]
        return ElementSet.from_indices(self, idx, is_subgroup=is_subgroup)


def _perm_order(row: np.ndarray) -> int:
    images = row.tolist()
    seen = [False] * len(images)
    result = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        n = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j]
            n += 1
        result = math.lcm(result, n)
    return result


class ElementSet:
    """A subset of a GroupTable's elements, stored as a boolean mask."""

    __slots__ = ("parent", "mask", "is_subgroup", "_indices")

    def __init__(self, parent: GroupTable, mask: np.ndarray, is_subgroup: bool = False):
        if mask.shape != (parent.order,):
            raise ValueError("mask length does not match the parent order")
        self.parent = parent
        self.mask = mask
        self.mask.flags.writeable = False
        self.is_subgroup = is_subgroup
        self._indices = None

    @classmethod
    def from_indices(cls, parent, indices, is_subgroup=False) -> ElementSet:
        mask = np.zeros(parent.order, dtype=bool)
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices,
                         dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= parent.order):
            raise IndexError("element index out of range")
        mask[idx] = True
        return cls(parent, mask, is_subgroup)

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = np.flatnonzero(self.mask)
            self._indices.flags.writeable = False
        return self._indices

    def __len__(self):
        return int(self.indices.size)

    @property
    def size(self) -> int:
        return len(self)

    def __iter__(self):
        return iter(self.indices.tolist())

    def __contains__(self, i) -> bool:
        if isinstance(i, Permutation):
            if i not in self.parent:
                return False
            i = self.parent.index(i)
        return bool(self.mask[i])

    def _check(self, other: ElementSet):
        if not isinstance(other, ElementSet):
            raise TypeError(f"expected ElementSet, got {type(other).__name__}")
        if other.parent is not self.parent:
            raise ParentMismatch("ElementSets belong to different groups")

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        self._check(other)
        return bool(np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((id(self.parent), self.mask.tobytes()))

    def __le__(self, other: ElementSet) -> bool:
        self._check(other)
        return not bool(np.any(self.mask & ~other.mask))

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        both = self.is_subgroup and other.is_subgroup
        return ElementSet(self.parent, self.mask & other.mask, is_subgroup=both)

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.parent, self.mask | other.mask)

    def is_trivial(self) -> bool:
        return len(self) == 1 and bool(self.mask[0])

    def is_whole(self) -> bool:
        return bool(self.mask.all())

    def elements(self) -> list[Permutation]:
        return [self.parent.element(i) for i in self]

    def orders(self) -> np.ndarray:
        return self.parent.order_cache[self.indices]

    def __repr__(self):
        kind = "subgroup" if self.is_subgroup else "set"
        return f"<ElementSet {kind} of size {len(self)} in {self.parent!r}>"


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple[ElementSet, ...]
    stabilized: bool
    length_to_trivial: int | None

    @property
    def last(self) -> ElementSet:
        return self.terms[-1]

    def term(self, k: int) -> ElementSet:
        """k-th term, or the stabilized term once k runs past the end."""
        return self.terms[min(k, len(self.terms) - 1)]

    def orders(self) -> list[int]:
        return [len(t) for t in self.terms]


@dataclass(frozen=True)
class Quotient:
    group: GroupTable
    projection: np.ndarray
    kernel: ElementSet

    def project(self, i: int) -> int:
        return int(self.projection[i])

    def image(self, s: ElementSet) -> ElementSet:
        if s.parent is not self.kernel.parent:
            raise ParentMismatch("set does not belong to the quotiented group")
        return ElementSet.from_indices(self.group, np.unique(self.projection[s.indices]))

    def lift(self, j: int) -> int:
        """Minimal-index preimage of quotient element ``j``."""
        hits = np.flatnonzero(self.projection == j)
        if hits.size == 0:
            raise IndexError(f"{j} is not an element of the quotient")
        return int(hits[0])


# -- construction --------------------------------------------------------


def close(degree: int, generators: Sequence[Permutation], budget: int = DEFAULT_BUDGET,
          name: str | None = None) -> GroupTable:
    """Enumerate ``<generators>`` by breadth-first search from the identity.

    Elements are numbered in discovery order, scanning generators in the
    given order, so the enumeration is deterministic.
    """
    gens = list(generators)
    for g in gens:
        if not isinstance(g, Permutation):
            raise TypeError(f"generator {g!r} is not a Permutation")
        if g.degree != degree:
            raise PermutationError(f"generator {g} has degree {g.degree}, expected {degree}")
    dtype = np.int16 if degree < 2**15 else np.int32
    gen_arr = np.array([g.images for g in gens], dtype=dtype).reshape(len(gens), degree)
    identity = np.arange(degree, dtype=dtype)
    rows = [identity]
    index = {identity.tobytes(): 0}
    parent = [0]
    parent_gen = [-1]
    right_gen: list[list[int]] = []
    head = 0
    while head < len(rows):
        frontier = np.stack(rows[head:])
        # (x * g)[i] = g[x[i]]
        prods = gen_arr[:, frontier].transpose(1, 0, 2) if gens else np.empty((len(frontier), 0, degree), dtype=dtype)
        for offset in range(len(frontier)):
            x = head + offset
            links = []
            for gi in range(len(gens)):
                row = prods[offset, gi]
                key = row.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(rows)
                    if j >= budget:
                        raise BudgetExceeded(
                            f"closure exceeded the element budget of {budget}"
                        )
                    index[key] = j
                    rows.append(row)
                    parent.append(x)
                    parent_gen.append(gi)
                links.append(j)
            right_gen.append(links)
        head += len(frontier)
    perms = np.stack(rows)
    rg = np.array(right_gen, dtype=np.int32).reshape(len(rows), len(gens))
    return GroupTable(degree, gens, perms, rg, np.array(parent), np.array(parent_gen), name=name)


# -- subgroup machinery --------------------------------------------------


def _require(G: GroupTable, *sets: ElementSet | None):
    for s in sets:
        if s is not None and s.parent is not G:
            raise ParentMismatch("ElementSet belongs to a different group")


def _closure_mask(G: GroupTable, mask: np.ndarray, gens: list[int], start: np.ndarray) -> np.ndarray:
    mul = G.mul
    frontier = start
    g = np.asarray(gens, dtype=np.int64)
    while frontier.size:
        prods = np.unique(mul[np.ix_(frontier, g)])
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return mask


def _generate(G: GroupTable, items: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Mask of the subgroup generated by ``items`` and a short generating list."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for s in items:
        if mask[s]:
            continue
        gens.append(int(s))
        # <H, s> for a subgroup H: closing H under right multiplication by
        # all generators from every element of H reaches the whole join.
        mask = _closure_mask(G, mask, gens, np.flatnonzero(mask))
    return mask, gens


def subgroup_generated(G: GroupTable, S: ElementSet | Iterable[int]) -> ElementSet:
    """Smallest subgroup containing ``S``."""
    if isinstance(S, ElementSet):
        _require(G, S)
        if S.is_subgroup:
            return S
        items = S.indices.tolist()
    else:
        items = [int(i) for i in S]
    mask, _ = _generate(G, items)
    return ElementSet(G, mask, is_subgroup=True)


def _subgroup_gens(H: ElementSet) -> list[int]:
    key = ("gens", H.mask.tobytes())
    cache = H.parent.cache
    if key not in cache:
        _, gens = _generate(H.parent, H.indices.tolist())
        cache[key] = gens
    return cache[key]


def normal_closure(G: GroupTable, S: ElementSet | Iterable[int]) -> ElementSet:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    items = S.indices.tolist() if isinstance(S, ElementSet) else [int(i) for i in S]
    if isinstance(S, ElementSet):
        _require(G, S)
    ggens = G.generator_indices
    mask, gens = _generate(G, items)
    pending = list(gens)
    while pending:
        h = pending.pop()
        for g in ggens:
            c = int(G.conj(h, g))
            if not mask[c]:
                gens.append(c)
                pending.append(c)
                mask = _closure_mask(G, mask, gens, np.flatnonzero(mask))
    return ElementSet(G, mask, is_subgroup=True)


def commutator_subgroup(G: GroupTable, A: ElementSet, B: ElementSet) -> ElementSet:
    """``[A, B]``: the subgroup generated by all ``[a, b]``, a in A, b in B."""
    _require(G, A, B)
    values = np.unique(G.comm[np.ix_(A.indices, B.indices)])
    return subgroup_generated(G, values.tolist())


def is_normal(G: GroupTable, H: ElementSet) -> bool:
    _require(G, H)
    idx = H.indices
    for g in G.generator_indices:
        if not H.mask[G.conj(idx, g)].all():
            return False
    return True


def is_abelian(G: GroupTable, H: ElementSet | None = None) -> bool:
    H = G.whole() if H is None else H
    _require(G, H)
    return bool((G.comm[np.ix_(H.indices, H.indices)] == 0).all())


def centralizer(G: GroupTable, S: ElementSet, within: ElementSet | None = None) -> ElementSet:
    """Elements of ``within`` (default G) commuting with every element of S."""
    _require(G, S, within)
    pool = G.whole() if within is None else within
    ok = (G.comm[np.ix_(pool.indices, S.indices)] == 0).all(axis=1)
    return ElementSet.from_indices(G, pool.indices[ok], is_subgroup=pool.is_subgroup)


def center(G: GroupTable) -> ElementSet:
    return centralizer(G, G.whole())


def normalizer(G: GroupTable, H: ElementSet) -> ElementSet:
    _require(G, H)
    idx = H.indices
    keep = [g for g in range(G.order) if H.mask[G.conj(idx, g)].all()]
    return ElementSet.from_indices(G, keep, is_subgroup=True)


def conjugacy_classes(G: GroupTable) -> list[np.ndarray]:
    """Conjugacy classes as sorted index arrays, ordered by smallest member."""
    cached = G.cache.get("classes")
    if cached is not None:
        return cached
    label = np.full(G.order, -1, dtype=np.int64)
    ggens = G.generator_indices
    classes = []
    for x in range(G.order):
        if label[x] >= 0:
            continue
        label[x] = len(classes)
        orbit = [x]
        frontier = np.array([x])
        while frontier.size:
            found = np.unique(np.concatenate([G.conj(frontier, g) for g in ggens])) if ggens else frontier[:0]
            new = found[label[found] < 0]
            label[new] = len(classes)
            orbit.extend(new.tolist())
            frontier = new
        classes.append(np.array(sorted(orbit)))
    G.cache["classes"] = classes
    return classes


# -- series -------------------------------------------------------------


def _series(G: GroupTable, kind: str, start: ElementSet, step) -> SeriesReport:
    terms = [start]
    while not terms[-1].is_trivial():
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    last = terms[-1]
    return SeriesReport(kind, tuple(terms), True, len(terms) - 1 if last.is_trivial() else None)


def _cached(G: GroupTable, key, compute):
    if key not in G.cache:
        G.cache[key] = compute()
    return G.cache[key]


def lower_central_series(G: GroupTable, H: ElementSet | None = None) -> SeriesReport:
    """gamma_1 = H, gamma_{i+1} = [gamma_i, H], until a term repeats."""
    H = G.whole() if H is None else H
    _require(G, H)
    return _cached(G, ("lcs", H.mask.tobytes()), lambda: _series(
        G, "lower_central", H, lambda T: commutator_subgroup(G, T, H)))


def derived_series(G: GroupTable, H: ElementSet | None = None) -> SeriesReport:
    H = G.whole() if H is None else H
    _require(G, H)
    return _cached(G, ("derived", H.mask.tobytes()), lambda: _series(
        G, "derived", H, lambda T: commutator_subgroup(G, T, T)))


def nilpotent_residual(G: GroupTable, H: ElementSet | None = None) -> ElementSet:
    """gamma_infinity: the terminal term of the lower central series."""
    return lower_central_series(G, H).last


def lower_fitting_series(G: GroupTable, H: ElementSet | None = None) -> SeriesReport:
    """N_0 = H, N_i = gamma_infinity(N_{i-1}), until a term repeats."""
    H = G.whole() if H is None else H
    _require(G, H)
    return _cached(G, ("lfs", H.mask.tobytes()), lambda: _series(
        G, "lower_fitting", H, lambda T: nilpotent_residual(G, T)))


def is_nilpotent(G: GroupTable, H: ElementSet | None = None) -> bool:
    return nilpotent_residual(G, H).is_trivial()


def is_soluble(G: GroupTable, H: ElementSet | None = None) -> bool:
    return derived_series(G, H).last.is_trivial()


def is_simple(G: GroupTable) -> bool:
    """True iff G is nontrivial with no proper nontrivial normal subgroup."""
    if G.order == 1:
        return False
    for cls in conjugacy_classes(G)[1:]:
        if not normal_closure(G, cls[:1].tolist()).is_whole():
            return False
    return True


def fitting_height(G: GroupTable, H: ElementSet | None = None) -> int:
    """Length of the lower Fitting series; 0 for the trivial group."""
    series = lower_fitting_series(G, H)
    if series.length_to_trivial is None:
        raise NotSolubleError(f"{G!r} is not soluble; Fitting height undefined")
    return series.length_to_trivial


def _class_closures(G: GroupTable) -> list[ElementSet]:
    """Normal closure of each conjugacy class (same order as conjugacy_classes)."""
    return _cached(G, "class_closures", lambda: [
        normal_closure(G, cls[:1].tolist()) for cls in conjugacy_classes(G)])


def _union_of_classes(G: GroupTable, keep) -> ElementSet:
    mask = np.zeros(G.order, dtype=bool)
    for cls, N in zip(conjugacy_classes(G), _class_closures(G)):
        if keep(N):
            mask[cls] = True
    return ElementSet(G, mask, is_subgroup=True)


def fitting_subgroup(G: GroupTable) -> ElementSet:
    """F(G) = {x : the normal closure of x is nilpotent}."""
    return _cached(G, "fitting", lambda: _union_of_classes(G, lambda N: is_nilpotent(G, N)))


def o_pi(G: GroupTable, pi: Iterable[int]) -> ElementSet:
    """Largest normal pi-subgroup: {x : the normal closure of x is a pi-group}."""
    primes = frozenset(int(p) for p in pi)
    return _cached(G, ("o_pi", primes), lambda: _union_of_classes(
        G, lambda N: set(prime_divisors(len(N))) <= primes))


def quotient(G: GroupTable, N: ElementSet) -> Quotient:
    """G/N as the permutation group induced on the cosets of N.

    Coset ``Nx`` goes to ``Nxg`` under ``g``; cosets are labelled in order of
    their smallest member.
    """
    _require(G, N)
    if not N.is_subgroup and subgroup_generated(G, N) != N:
        raise GroupError("N is not a subgroup")
    if not is_normal(G, N):
        raise GroupError("N is not normal in G")
    mul = G.mul
    n_idx = N.indices
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if label[x] < 0:
            label[mul[n_idx, x]] = len(reps)
            reps.append(x)
    m = len(reps)
    reps_arr = np.array(reps)

    def action(g: int) -> Permutation:
        return Permutation(label[mul[reps_arr, g]].tolist(), check=False)

    gens = [action(g) for g in G.generator_indices]
    Q = close(m, gens, name=f"{G.name or 'G'}/N" if G.name else None)
    projection = np.array([Q.index(action(g)) for g in range(G.order)], dtype=np.int64)
    return Quotient(Q, projection, N)


def coprime_action_decomposition_check(G: GroupTable, N: ElementSet, x: int) -> bool:
    """For abelian N normalized by x with (|x|, |N|) = 1, check
    N = [N,x] x C_N(x) and [[N,x],x] = [N,x]."""
    _require(G, N)
    if not N.is_subgroup and subgroup_generated(G, N) != N:
        raise GroupError("N is not a subgroup")
    if not is_abelian(G, N):
        raise GroupError("N is not abelian")
    xs = G.subset([x])
    if not N.mask[G.conj(N.indices, x)].all():
        raise GroupError("x does not normalize N")
    if math.gcd(int(G.order_cache[x]), len(N)) != 1:
        raise GroupError("|x| and |N| are not coprime")
    NX = commutator_subgroup(G, N, xs)
    C = centralizer(G, xs, within=N)
    NXX = commutator_subgroup(G, NX, xs)
    product = np.unique(G.mul[np.ix_(NX.indices, C.indices)])
    return bool((NX & C).is_trivial() and product.size == len(N)
                and N.mask[product].all() and NXX == NX)
