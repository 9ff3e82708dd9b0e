"""Theorem checks: one verdict function per statement.

Each check returns a :class:`Verdict`.  Iff-statements record both sides
separately (``left_side``, ``right_side``) and ``equivalent`` says whether
they agree.  For implications ``equivalent`` says whether the implication
holds; for subgroup equalities the two sides are the two containments.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from . import group as grp
from .coprime import (
    chain,
    DELTA,
    delta_star_set,
    delta_star_subgroup,
    gamma_star_set,
    gamma_star_subgroup,
)
from .group import ElementSet, GroupTable
from .perm import Permutation, format_cycles
from .words import WordSpec, verbal_subgroup, word_values

__all__ = [
    "STATEMENTS",
    "K_BOUNDS",
    "Witness",
    "Verdict",
    "order_multiplicative",
    "theorem_a_verdict",
    "theorem_b_verdict",
    "delta1_corollary_verdict",
    "prop_gamma_residual_verdict",
    "lemma_delta_fitting_verdict",
    "thm_fitting_delta_verdict",
    "thm_pi_elements_verdict",
    "baumslag_wiegold_verdict",
    "counterexample_verdict",
    "invstar_check",
    "pi_subsets",
]

STATEMENTS = (
    "theorem_a",
    "theorem_b",
    "delta1_corollary",
    "prop_gamma_residual",
    "lemma_delta_fitting",
    "thm_fitting_delta",
    "thm_pi_elements",
    "baumslag_wiegold",
    "counterexample_s3",
    "counterexample_a5",
    "invstar",
)

# smallest admissible k per statement; None = statement takes no k
K_BOUNDS = {
    "theorem_a": 2,
    "theorem_b": 2,
    "delta1_corollary": None,
    "prop_gamma_residual": 2,
    "lemma_delta_fitting": 0,
    "thm_fitting_delta": 1,
    "thm_pi_elements": 1,
    "baumslag_wiegold": None,
    "counterexample_s3": None,
    "counterexample_a5": None,
    "invstar": 0,
}

INVSTAR_PAIR_BUDGET = 4_000_000


@dataclass(frozen=True)
class Witness:
    """A coprime pair whose product order is not the product of orders."""

    a: Permutation
    b: Permutation
    order_a: int
    order_b: int
    order_ab: int

    def to_dict(self) -> dict:
        return {
            "a": format_cycles(self.a),
            "b": format_cycles(self.b),
            "order_a": self.order_a,
            "order_b": self.order_b,
            "order_ab": self.order_ab,
        }

    def __str__(self):
        return (f"a={format_cycles(self.a)} (|a|={self.order_a}), "
                f"b={format_cycles(self.b)} (|b|={self.order_b}), |ab|={self.order_ab}")


@dataclass
class Verdict:
    group_name: str
    statement: str
    parameter_k: int | None
    left_side: bool
    right_side: bool
    equivalent: bool
    witness: Witness | None = None
    elapsed: float = 0.0
    group_order: int | None = None
    status: str = ""
    pi: tuple[int, ...] | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.equivalent else "fail"

    def to_dict(self, witnesses: bool = True, stable: bool = False) -> dict:
        d = {
            "group_name": self.group_name,
            "group_order": self.group_order,
            "statement": self.statement,
            "parameter_k": self.parameter_k,
            "pi": list(self.pi) if self.pi is not None else None,
            "left_side": self.left_side,
            "right_side": self.right_side,
            "equivalent": self.equivalent,
            "status": self.status,
            "details": self.details,
        }
        if witnesses:
            d["witness"] = self.witness.to_dict() if self.witness else None
        else:
            d["has_witness"] = self.witness is not None
        d["elapsed"] = None if stable else round(self.elapsed, 6)
        return d


def _make_witness(G: GroupTable, a: int, b: int) -> Witness:
    # recomputed from the permutations themselves, not from the tables
    pa, pb = G.element(a), G.element(b)
    oa, ob, oab = pa.order(), pb.order(), (pa * pb).order()
    if math.gcd(oa, ob) != 1 or oab == oa * ob:
        raise AssertionError(f"invalid witness {pa}, {pb}: orders {oa}, {ob}, {oab}")
    return Witness(pa, pb, oa, ob, oab)


def order_multiplicative(G: GroupTable, S: ElementSet) -> Witness | None:
    """None if |ab| = |a||b| for all coprime-order a, b in S, else the first
    failing pair (a before b, both in increasing index order)."""
    idx = S.indices
    o = G.order_cache
    block = 256
    for start in range(0, idx.size, block):
        rows = idx[start:start + block]
        cop = G.coprime[np.ix_(rows, idx)]
        prod_order = o[G.mul[np.ix_(rows, idx)]]
        bad = cop & (prod_order != o[rows][:, None] * o[idx][None, :])
        if bad.any():
            r, c = np.argwhere(bad)[0]
            return _make_witness(G, int(rows[r]), int(idx[c]))
    return None


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _name(G: GroupTable) -> str:
    return G.name or "G"


def _iff(G, statement, k, left, right, witness=None, elapsed=0.0, **details) -> Verdict:
    return Verdict(_name(G), statement, k, left, right, left == right, witness,
                   elapsed, G.order, details=details)


def _containments(G, statement, k, X: ElementSet, Y: ElementSet, elapsed) -> Verdict:
    left, right = X <= Y, Y <= X
    return Verdict(_name(G), statement, k, left, right, left and right, None, elapsed,
                   G.order, details={"left_order": len(X), "right_order": len(Y)})


def _check_k(k: int, lowest: int):
    if k < lowest:
        raise ValueError(f"k must be >= {lowest}, got {k}")


def theorem_a_verdict(G: GroupTable, k: int) -> Verdict:
    """Order condition on gamma*_k-commutators vs nilpotency of gamma*_k(G)."""
    _check_k(k, 2)
    with _Timer() as t:
        w = order_multiplicative(G, gamma_star_set(G, k))
        right = grp.is_nilpotent(G, gamma_star_subgroup(G, k))
    return _iff(G, "theorem_a", k, w is None, right, w, t.elapsed,
                subgroup_order=len(gamma_star_subgroup(G, k)),
                set_size=len(gamma_star_set(G, k)))


def theorem_b_verdict(G: GroupTable, k: int) -> Verdict:
    """Order condition on POWERS of delta*_k-commutators vs nilpotency of
    delta*_k(G).  The variant without powers is recorded in ``details``."""
    _check_k(k, 2)
    with _Timer() as t:
        w = order_multiplicative(G, chain(G, DELTA).powers(k))
        right = grp.is_nilpotent(G, delta_star_subgroup(G, k))
        plain = order_multiplicative(G, delta_star_set(G, k))
    return _iff(G, "theorem_b", k, w is None, right, w, t.elapsed,
                subgroup_order=len(delta_star_subgroup(G, k)),
                left_without_powers=plain is None)


def delta1_corollary_verdict(G: GroupTable) -> Verdict:
    """Order condition on delta*_1-commutators (no powers) vs nilpotency of
    the nilpotent residual.  The power-closed variant goes in ``details``."""
    with _Timer() as t:
        w = order_multiplicative(G, delta_star_set(G, 1))
        right = grp.is_nilpotent(G, grp.nilpotent_residual(G))
        powered = order_multiplicative(G, chain(G, DELTA).powers(1))
    return _iff(G, "delta1_corollary", 1, w is None, right, w, t.elapsed,
                left_with_powers=powered is None)


def prop_gamma_residual_verdict(G: GroupTable, k: int) -> Verdict:
    _check_k(k, 2)
    with _Timer() as t:
        X = gamma_star_subgroup(G, k)
        Y = grp.nilpotent_residual(G)
    return _containments(G, "prop_gamma_residual", k, X, Y, t.elapsed)


def lemma_delta_fitting_verdict(G: GroupTable, k: int) -> Verdict:
    """delta*_k(G) against the k-th lower Fitting term (the stabilized term
    once k runs past the end of the series)."""
    _check_k(k, 0)
    with _Timer() as t:
        X = delta_star_subgroup(G, k)
        Y = grp.lower_fitting_series(G).term(k)
    return _containments(G, "lemma_delta_fitting", k, X, Y, t.elapsed)


def thm_fitting_delta_verdict(G: GroupTable, k: int) -> Verdict:
    _check_k(k, 1)
    with _Timer() as t:
        left = delta_star_subgroup(G, k).is_trivial()
        soluble = grp.is_soluble(G)
        height = grp.fitting_height(G) if soluble else None
        right = soluble and height <= k
    return _iff(G, "thm_fitting_delta", k, left, right, None, t.elapsed, fitting_height=height)


def _is_pi_number(n: int, pi: frozenset[int]) -> bool:
    return set(grp.prime_divisors(n)) <= pi


def thm_pi_elements_verdict(G: GroupTable, k: int, pi: Iterable[int]) -> Verdict:
    """If every delta*_k-commutator is a pi-element (|pi| <= 2) then G is
    soluble and delta*_k(G) <= O_pi(G)."""
    _check_k(k, 1)
    primes = frozenset(int(p) for p in pi)
    if len(primes) > 2:
        raise ValueError("pi may contain at most two primes")
    with _Timer() as t:
        orders = np.unique(delta_star_set(G, k).orders())
        hypothesis = all(_is_pi_number(int(o), primes) for o in orders)
        conclusion = False
        if hypothesis:
            conclusion = grp.is_soluble(G) and delta_star_subgroup(G, k) <= grp.o_pi(G, primes)
    v = Verdict(_name(G), "thm_pi_elements", k, hypothesis, conclusion,
                (not hypothesis) or conclusion, None, t.elapsed, G.order,
                pi=tuple(sorted(primes)))
    if not hypothesis:
        v.status = "vacuous"
    return v


def pi_subsets(G: GroupTable, max_size: int = 2) -> list[tuple[int, ...]]:
    """All subsets of pi(G) with at most ``max_size`` primes, empty set first."""
    primes = G.prime_set
    return [c for r in range(max_size + 1) for c in combinations(primes, r)]


def baumslag_wiegold_verdict(G: GroupTable) -> Verdict:
    with _Timer() as t:
        w = order_multiplicative(G, G.whole())
        right = grp.is_nilpotent(G)
    return _iff(G, "baumslag_wiegold", None, w is None, right, w, t.elapsed)


def counterexample_verdict(G: GroupTable, word: WordSpec, statement: str = "counterexample") -> Verdict:
    """Reproduce a negative answer for the word ``word`` in ``G``.

    ``left_side``: every nontrivial value has order 2 (so the order
    condition on values holds vacuously).  ``right_side``: the verbal
    subgroup is all of G (so it is not nilpotent when G is not).
    ``equivalent`` is true when both hold.
    """
    with _Timer() as t:
        values = word_values(G, word)
        orders = values.orders()
        nontrivial = orders[orders != 1]
        left = bool((nontrivial == 2).all())
        verbal = verbal_subgroup(G, word)
        right = verbal.is_whole()
        condition = order_multiplicative(G, values) is None
        nilpotent = grp.is_nilpotent(G, verbal)
    values_str = [format_cycles(p) for p in values.elements() if not p.is_identity()]
    return Verdict(_name(G), statement, None, left, right, left and right, None, t.elapsed,
                   G.order, details={
                       "word": str(word),
                       "nontrivial_values": len(nontrivial),
                       "value_orders": sorted(set(int(o) for o in orders)),
                       "verbal_subgroup_order": len(verbal),
                       "condition_holds": condition,
                       "verbal_subgroup_nilpotent": nilpotent,
                       "values": values_str if len(values_str) <= 32 else None,
                   })


def invstar_check(G: GroupTable, n_max: int, pair_budget: int = INVSTAR_PAIR_BUDGET) -> Verdict:
    """Every involution of a minimal simple group is a delta*_n-commutator,
    checked for n = 0..n_max.

    Levels whose pair enumeration would exceed ``pair_budget`` are not
    computed; the verdict is then marked skipped with the largest verified n.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if grp.is_abelian(G) or not grp.is_simple(G):
        raise ValueError(f"{_name(G)} is not a nonabelian simple group")
    with _Timer() as t:
        involutions = G.subset(np.flatnonzero(G.order_cache == 2))
        dchain = chain(G, DELTA)
        verified = -1
        missing: dict[int, int] = {}
        reason = None
        for n in range(n_max + 1):
            if n >= 1 and len(dchain.powers(n - 1)) ** 2 > pair_budget:
                reason = f"level {n} needs more than {pair_budget} pairs"
                break
            level = dchain.level(n)
            lost = int((involutions.mask & ~level.mask).sum())
            if lost:
                missing[n] = lost
            verified = n
        holds = not missing
    v = Verdict(_name(G), "invstar", n_max, holds, True, holds, None, t.elapsed, G.order,
                details={"involutions": len(involutions), "max_verified_n": verified,
                         "missing": {str(n): c for n, c in missing.items()}})
    if reason and holds:
        v.status = "skipped"
        v.details["reason"] = reason
    return v
