"""Value sets of the few group words needed here.

Supported words (canonical text form in brackets):

* lower central word gamma_k = [x_1, ..., x_k]       ("gamma:k")
* Engel word eps_k = [x, y, ..., y] (k copies of y)  ("engel:k")
* power word x^m                                     ("pow:m")
* [x, y^10, y^10, y^10]                              ("a5word")
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import BudgetExceeded, ElementSet, GroupTable, subgroup_generated

__all__ = ["WordSpec", "PAIR_BUDGET", "parse_word", "word_values", "verbal_subgroup"]

PAIR_BUDGET = 1_000_000

_KINDS = ("lower_central", "engel", "power", "a5_counterexample")


@dataclass(frozen=True)
class WordSpec:
    kind: str
    param: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown word kind {self.kind!r}")
        if self.param < 1:
            raise ValueError("word parameter must be >= 1")

    @classmethod
    def lower_central(cls, k: int) -> WordSpec:
        return cls("lower_central", k)

    @classmethod
    def engel(cls, k: int) -> WordSpec:
        return cls("engel", k)

    @classmethod
    def power(cls, m: int) -> WordSpec:
        return cls("power", m)

    @classmethod
    def a5_counterexample(cls) -> WordSpec:
        return cls("a5_counterexample", 10)

    @property
    def arity(self) -> int:
        if self.kind == "lower_central":
            return self.param
        if self.kind == "power":
            return 1
        return 2

    def __str__(self):
        if self.kind == "lower_central":
            return f"gamma:{self.param}"
        if self.kind == "engel":
            return f"engel:{self.param}"
        if self.kind == "power":
            return f"pow:{self.param}"
        return "a5word"


def parse_word(text: str) -> WordSpec:
    text = text.strip()
    if text == "a5word":
        return WordSpec.a5_counterexample()
    head, sep, tail = text.partition(":")
    kinds = {"gamma": "lower_central", "engel": "engel", "pow": "power"}
    if not sep or head not in kinds:
        raise ValueError(f"bad word {text!r}; expected gamma:k, engel:k, pow:m or a5word")
    try:
        param = int(tail)
    except ValueError:
        raise ValueError(f"bad word parameter in {text!r}") from None
    return WordSpec(kinds[head], param)


def _check_pairs(G: GroupTable):
    if G.order ** 2 > PAIR_BUDGET:
        raise BudgetExceeded(f"|G|^2 = {G.order ** 2} exceeds the pair budget {PAIR_BUDGET}")


def _power_indices(G: GroupTable, m: int) -> np.ndarray:
    """Index of x^m for every x."""
    mul = G.mul
    idx = np.arange(G.order)
    result = np.zeros(G.order, dtype=np.int64)
    base = idx.copy()
    while m:
        if m & 1:
            result = mul[result, base]
        base = mul[base, base]
        m >>= 1
    return result


def _engel_tail(G: GroupTable, zs: np.ndarray, steps: int) -> np.ndarray:
    """All values [x, z, ..., z] (``steps`` copies of z) for x in G, z in zs."""
    comm = G.comm
    cur = comm[:, zs]
    for _ in range(steps - 1):
        cur = comm[cur, zs[None, :]]
    return np.unique(cur)


def word_values(G: GroupTable, w: WordSpec) -> ElementSet:
    """G_w, the set of all values of ``w`` in ``G``."""
    if w.kind == "power":
        vals = np.unique(_power_indices(G, w.param))
    elif w.kind == "lower_central":
        vals = np.arange(G.order)
        for _ in range(w.param - 1):
            vals = np.unique(G.comm[vals, :])
    elif w.kind == "engel":
        _check_pairs(G)
        vals = _engel_tail(G, np.arange(G.order), w.param)
    else:
        _check_pairs(G)
        # one column per y, so every (x, y) pair is evaluated
        zs = _power_indices(G, w.param)
        vals = _engel_tail(G, zs, 3)
    return ElementSet.from_indices(G, vals)


def verbal_subgroup(G: GroupTable, w: WordSpec) -> ElementSet:
    """w(G), the subgroup generated by the values of ``w``."""
    return subgroup_generated(G, word_values(G, w))
