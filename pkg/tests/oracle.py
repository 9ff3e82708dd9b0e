"""Brute-force reference implementations used only by the tests.

Everything here works on plain Permutation objects and Python sets; none of
it touches the Cayley tables or ElementSet machinery under test.
"""

import math
from itertools import product

from coprimecomm.perm import Permutation


def identity_of(elems):
    return Permutation.identity(next(iter(elems)).degree)


def closure(gens, degree):
    e = Permutation.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return frozenset(seen)


def comm(a, b):
    return a.inverse() * b.inverse() * a * b


def conj(x, g):
    return g.inverse() * x * g


def all_subgroups(elems):
    """Every subgroup, as frozensets: joins of cyclic subgroups to a fixpoint."""
    elems = list(elems)
    degree = elems[0].degree
    cyclic = {closure([x], degree) for x in elems}
    subgroups = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = closure(list(H | C), degree)
                if J not in subgroups:
                    new.add(J)
        subgroups |= new
        frontier = new
    return subgroups


def is_normal(H, elems):
    return all(conj(h, g) in H for h in H for g in elems)


def normal_subgroups(elems):
    return [H for H in all_subgroups(elems) if is_normal(H, elems)]


def is_nilpotent(H):
    # finite group is nilpotent iff elements of coprime order commute
    return all(a * b == b * a for a in H for b in H if math.gcd(a.order(), b.order()) == 1)


def prime_set(n):
    return {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}


def fitting(elems):
    normals = [H for H in normal_subgroups(elems) if is_nilpotent(H)]
    F = max(normals, key=len)
    assert all(H <= F for H in normals)
    return F


def o_pi(elems, pi):
    normals = [H for H in normal_subgroups(elems) if prime_set(len(H)) <= set(pi)]
    O = max(normals, key=len)
    assert all(H <= O for H in normals)
    return O


def normal_closure(S, elems):
    found = [H for H in normal_subgroups(elems) if set(S) <= H]
    return min(found, key=len)


def cosets(N, elems):
    return {frozenset(n * x for n in N) for x in elems}


def quotient_is_abelian(N, elems):
    return all(comm(a, b) in N for a in elems for b in elems)


def power_closure(S):
    out = set()
    for s in S:
        x = s
        out.add(Permutation.identity(s.degree))
        while not x.is_identity():
            out.add(x)
            x = x * s
    return out


def coprime_pairs(A, B):
    return {comm(a, b) for a, b in product(A, B) if math.gcd(a.order(), b.order()) == 1}


def gamma_star(elems, k):
    level = set(elems)
    for _ in range(2, k + 1):
        level = coprime_pairs(power_closure(level), elems)
    return level


def delta_star(elems, k):
    level = set(elems)
    for _ in range(k):
        Y = power_closure(level)
        level = coprime_pairs(Y, Y)
    return level
