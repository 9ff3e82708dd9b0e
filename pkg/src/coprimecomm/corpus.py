"""Benchmark groups and the JSON group-file loader.

Every group is produced as a permutation group.  Matrix groups are turned
into permutation actions before closure: SL(2, q) acts on the q^2 - 1
nonzero row vectors of GF(q)^2, PSL(2, q) on the q + 1 points of the
projective line.

Group file schema (JSON)::

    {
      "name": "S3",
      "degree": 3,
      "generators": ["(1 2)", "(1 2 3)"],
      "expected_order": 6            # optional
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Sequence

from . import group as grp
from .gf import field
from .group import GroupTable, close
from .perm import CycleParseError, Permutation, parse_cycles

TAGS = frozenset({"abelian", "nilpotent", "soluble", "simple", "minimal_simple", "perfect"})


class CorpusError(ValueError):
    pass


class OrderMismatchError(CorpusError):
    pass


@dataclass
class CorpusEntry:
    name: str
    tags: frozenset[str]
    expected_order: int
    builder: Callable[[], tuple[int, list[Permutation]]]
    _group: GroupTable | None = dc_field(default=None, repr=False, compare=False)

    def group(self, check_tags: bool = True) -> GroupTable:
        """Build (once) and return the group, asserting its order and tags."""
        if self._group is None:
            degree, gens = self.builder()
            G = close(degree, gens, name=self.name)
            if G.order != self.expected_order:
                raise OrderMismatchError(
                    f"{self.name}: closure has order {G.order}, expected {self.expected_order}"
                )
            if check_tags:
                found = computed_tags(G)
                declared = self.tags - {"minimal_simple"}
                if found != declared:
                    raise CorpusError(
                        f"{self.name}: declared tags {sorted(declared)} but computed {sorted(found)}"
                    )
                if "minimal_simple" in self.tags and not ("simple" in found and "abelian" not in found):
                    raise CorpusError(f"{self.name}: tagged minimal_simple but not nonabelian simple")
            self._group = G
        return self._group


def computed_tags(G: GroupTable) -> frozenset[str]:
    """Tags derivable by direct computation (all except minimal_simple)."""
    tags = set()
    if grp.is_abelian(G):
        tags.add("abelian")
    if grp.is_nilpotent(G):
        tags.add("nilpotent")
    if grp.is_soluble(G):
        tags.add("soluble")
    if grp.is_simple(G):
        tags.add("simple")
    if grp.commutator_subgroup(G, G.whole(), G.whole()).is_whole():
        tags.add("perfect")
    return frozenset(tags)


def is_minimal_simple(G: GroupTable) -> bool:
    """Nonabelian simple with every proper subgroup soluble.

    A finite group is soluble iff all of its 2-generated subgroups are
    (Thompson), so it suffices to scan <x, y> with x running over class
    representatives and y over all elements.
    """
    if not grp.is_simple(G) or grp.is_abelian(G):
        return False
    seen = set()
    for cls in grp.conjugacy_classes(G)[1:]:
        x = int(cls[0])
        for y in range(1, G.order):
            H = grp.subgroup_generated(G, [x, y])
            if H.is_whole():
                continue
            key = H.mask.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if not grp.is_soluble(G, H):
                return False
    return True


# -- constructions -------------------------------------------------------


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    return Permutation.from_cycles([tuple(points)], degree)


def cyclic(n: int):
    if n == 1:
        return 1, []
    return n, [_cycle(range(n), n)]


def dihedral(n: int):
    """Symmetries of the regular n-gon (order 2n)."""
    rot = _cycle(range(n), n)
    refl = Permutation([(-i) % n for i in range(n)])
    return n, [rot, refl]


def symmetric(n: int):
    return n, [_cycle([0, 1], n), _cycle(range(n), n)]


def alternating(n: int):
    last = range(n) if n % 2 else range(1, n)
    return n, [_cycle([0, 1, 2], n), _cycle(last, n)]


def quaternion():
    """Q8 in its regular representation, from unit quaternion arithmetic."""
    basis = []
    for k in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[k] = s
            basis.append(tuple(v))

    def qmul(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    pos = {v: i for i, v in enumerate(basis)}
    i_unit, j_unit = (0, 1, 0, 0), (0, 0, 1, 0)
    gens = [Permutation([pos[qmul(v, u)] for v in basis]) for u in (i_unit, j_unit)]
    return 8, gens


def frobenius_21():
    """C7 x| C3: z -> z + 1 and z -> 2z on Z/7."""
    return 7, [Permutation([(z + 1) % 7 for z in range(7)]),
               Permutation([(2 * z) % 7 for z in range(7)])]


def _matrix_gens(q: int):
    F = field(q)
    one, zero = 1, 0
    m1 = F.neg[one]
    lam = F.primitive
    T = ((one, one), (zero, one))
    S = ((zero, one), (m1, zero))
    D = ((lam, zero), (zero, F.inv[lam]))
    return F, [T, S, D]


def _act(F, v, M):
    """Row vector times matrix."""
    x, y = v
    (a, b), (c, d) = M
    add, mul = F.add, F.mul
    return add[mul[x][a]][mul[y][c]], add[mul[x][b]][mul[y][d]]


def special_linear(q: int):
    """SL(2, q) acting on the nonzero vectors of GF(q)^2."""
    F, mats = _matrix_gens(q)
    points = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(points)}
    gens = [Permutation([pos[_act(F, v, M)] for v in points]) for M in mats]
    return len(points), gens


def projective_special_linear(q: int):
    """PSL(2, q) acting on the projective line GF(q) u {inf} (inf = point q)."""
    F, mats = _matrix_gens(q)

    def normalize(v):
        x, y = v
        if y == 0:
            return q
        return F.mul[x][F.inv[y]]

    line = [(z, 1) for z in range(q)] + [(1, 0)]
    gens = [Permutation([normalize(_act(F, v, M)) for v in line]) for M in mats]
    return q + 1, gens


def direct_product(*factors):
    """Direct product of (degree, generators) pairs acting on disjoint points."""
    total = sum(d for d, _ in factors)
    gens = []
    offset = 0
    for degree, fgens in factors:
        for g in fgens:
            images = list(range(total))
            for i, x in enumerate(g.images):
                images[offset + i] = offset + x
            gens.append(Permutation(images, check=False))
        offset += degree
    return max(total, 1), gens


def psl_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _entries() -> list[CorpusEntry]:
    ab = frozenset({"abelian", "nilpotent", "soluble"})
    sol = frozenset({"soluble"})
    nil = frozenset({"nilpotent", "soluble"})
    minsimple = frozenset({"simple", "minimal_simple", "perfect"})
    simple = frozenset({"simple", "perfect"})

    def E(name, tags, order, builder):
        return CorpusEntry(name, frozenset(tags), order, builder)

    out = []
    for n in range(1, 13):
        tags = set(ab)
        if n == 1:
            tags.add("perfect")
        elif len(grp.prime_divisors(n)) == 1 and grp.prime_divisors(n)[0] == n:
            tags.add("simple")
        out.append(E(f"C{n}", tags, n, lambda n=n: cyclic(n)))
    for n in (4, 5, 6, 8):
        tags = nil if n in (4, 8) else sol
        out.append(E(f"D{n}", tags, 2 * n, lambda n=n: dihedral(n)))
    out.append(E("Q8", nil, 8, quaternion))
    out += [
        E("S3", sol, 6, lambda: symmetric(3)),
        E("S4", sol, 24, lambda: symmetric(4)),
        E("S5", (), 120, lambda: symmetric(5)),
        E("S6", (), 720, lambda: symmetric(6)),
        E("A4", sol, 12, lambda: alternating(4)),
        E("A5", minsimple, 60, lambda: alternating(5)),
        E("A6", simple, 360, lambda: alternating(6)),
        E("C7:C3", sol, 21, frobenius_21),
        E("SL(2,3)", sol, 24, lambda: special_linear(3)),
        E("SL(2,5)", {"perfect"}, 120, lambda: special_linear(5)),
    ]
    for q in (5, 7, 8, 9, 11, 13):
        # minimal simple: PSL(2, 2^p); PSL(2, p) with p^2 + 1 = 0 mod 5; PSL(2,5) = PSL(2,4)
        tags = minsimple if q in (5, 7, 8, 13) else simple
        out.append(E(f"PSL(2,{q})", tags, psl_order(q), lambda q=q: projective_special_linear(q)))
    out += [
        E("C2xS3", sol, 12, lambda: direct_product(cyclic(2), symmetric(3))),
        E("S3xS3", sol, 36, lambda: direct_product(symmetric(3), symmetric(3))),
        E("C3xA4", sol, 36, lambda: direct_product(cyclic(3), alternating(4))),
    ]
    return out


_CORPUS: list[CorpusEntry] | None = None


def builtin_corpus() -> list[CorpusEntry]:
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = _entries()
    return _CORPUS


def get(name: str) -> CorpusEntry:
    for entry in builtin_corpus():
        if entry.name.lower() == name.lower():
            return entry
    raise KeyError(f"unknown corpus group {name!r}")


def select(max_order: int | None = None, names: Sequence[str] | None = None,
           tags: Sequence[str] | None = None) -> list[CorpusEntry]:
    entries = builtin_corpus()
    if names:
        entries = [get(n) for n in names]
    if max_order is not None:
        entries = [e for e in entries if e.expected_order <= max_order]
    if tags:
        entries = [e for e in entries if set(tags) <= e.tags]
    return entries


def load_group_file(path: str | Path) -> CorpusEntry:
    """Load a user group from the JSON schema in the module docstring.

    The group is closed eagerly so that order mismatches and budget
    overruns surface here.
    """
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise CorpusError(f"{path}: top level must be an object")
    missing = [k for k in ("name", "degree", "generators") if k not in doc]
    if missing:
        raise CorpusError(f"{path}: missing field(s) {', '.join(missing)}")
    degree = doc["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise CorpusError(f"{path}: degree must be a positive integer")
    if not isinstance(doc["generators"], list):
        raise CorpusError(f"{path}: generators must be a list of cycle strings")
    lines = text.splitlines()
    gens = []
    for i, g in enumerate(doc["generators"]):
        try:
            gens.append(parse_cycles(str(g), degree))
        except CycleParseError as exc:
            lineno = next((n for n, line in enumerate(lines, 1) if json.dumps(g) in line), None)
            where = f"{path}:{lineno}" if lineno else str(path)
            raise CorpusError(f"{where}: generator {i}: {exc}") from exc
    expected = doc.get("expected_order")
    name = str(doc["name"])
    G = close(degree, gens, name=name)
    if expected is not None and G.order != expected:
        raise OrderMismatchError(f"{path}: {name} has order {G.order}, expected_order is {expected}")
    entry = CorpusEntry(name, computed_tags(G), G.order, lambda: (degree, gens))
    entry._group = G
    return entry


def resolve(ref: str) -> CorpusEntry:
    """A builtin name, or a path to a group file."""
    try:
        return get(ref)
    except KeyError:
        pass
    if Path(ref).is_file():
        return load_group_file(ref)
    raise KeyError(f"unknown group {ref!r}: neither a builtin name nor a file")
