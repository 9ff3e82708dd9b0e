import json

import pytest
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from coprimecomm import corpus
from coprimecomm import group as grp

ALL = [e.name for e in corpus.builtin_corpus()]


def test_minimum_membership():
    names = set(ALL)
    required = {f"C{n}" for n in range(1, 13)} | {
        "D4", "D5", "D6", "D8", "Q8", "S3", "S4", "S5", "S6", "A4", "A5", "A6",
        "C7:C3", "SL(2,3)", "SL(2,5)", "C2xS3", "S3xS3", "C3xA4",
    } | {f"PSL(2,{q})" for q in (5, 7, 8, 9, 11, 13)}
    assert required <= names


@pytest.mark.parametrize("name", ALL)
def test_orders_and_tags(name):
    entry = corpus.get(name)
    G = entry.group()
    assert G.order == entry.expected_order
    assert corpus.computed_tags(G) == entry.tags - {"minimal_simple"}


@pytest.mark.parametrize("q, order, degree", [
    (5, 60, 6), (7, 168, 8), (8, 504, 9), (9, 360, 10), (11, 660, 12), (13, 1092, 14),
])
def test_psl(q, order, degree):
    G = corpus.get(f"PSL(2,{q})").group()
    assert G.order == order == corpus.psl_order(q)
    assert G.degree == degree
    assert "simple" in corpus.computed_tags(G)


def test_sl25():
    G = corpus.get("SL(2,5)").group()
    assert G.order == 120 and G.degree == 24
    assert len(grp.center(G)) == 2
    assert grp.commutator_subgroup(G, G.whole(), G.whole()).is_whole()
    Z = grp.center(G)
    assert "simple" in corpus.computed_tags(grp.quotient(G, Z).group)


@pytest.mark.parametrize("name", [n for n in ALL if corpus.get(n).expected_order <= 200])
def test_against_sympy(name):
    G = corpus.get(name).group()
    if not G.generators:
        return
    S = PermutationGroup([SymPerm(list(g.images)) for g in G.generators])
    assert S.order() == G.order
    assert S.is_nilpotent == grp.is_nilpotent(G)
    assert S.is_solvable == grp.is_soluble(G)
    assert S.is_abelian == grp.is_abelian(G)
    assert [H.order() for H in S.derived_series()] == grp.derived_series(G).orders() + (
        [] if grp.derived_series(G).last.is_trivial() else [])
    assert S.lower_central_series()[-1].order() == len(grp.nilpotent_residual(G))


@pytest.mark.parametrize("name", ["A5", "PSL(2,7)", "PSL(2,8)", "PSL(2,13)"])
def test_minimal_simple_tags(name):
    entry = corpus.get(name)
    assert "minimal_simple" in entry.tags
    assert corpus.is_minimal_simple(entry.group())


@pytest.mark.parametrize("name", ["A6", "PSL(2,11)", "S5", "SL(2,5)"])
def test_not_minimal_simple(name):
    entry = corpus.get(name)
    assert "minimal_simple" not in entry.tags
    assert not corpus.is_minimal_simple(entry.group())


def _write(tmp_path, doc, raw=None):
    path = tmp_path / "g.json"
    path.write_text(raw if raw is not None else json.dumps(doc, indent=2))
    return path


def test_load_group_file(tmp_path):
    path = _write(tmp_path, {"name": "S3", "degree": 3, "generators": ["(1 2)", "(1 2 3)"]})
    entry = corpus.load_group_file(path)
    assert entry.name == "S3" and entry.group().order == 6
    assert "soluble" in entry.tags


def test_load_group_file_expected_order(tmp_path):
    path = _write(tmp_path, {"name": "S3", "degree": 3, "generators": ["(1 2)", "(1 2 3)"],
                             "expected_order": 6})
    assert corpus.load_group_file(path).group().order == 6
    path = _write(tmp_path, {"name": "S3", "degree": 3, "generators": ["(1 2)", "(1 2 3)"],
                             "expected_order": 59})
    with pytest.raises(corpus.OrderMismatchError, match="59"):
        corpus.load_group_file(path)


def test_load_group_file_bad_cycle(tmp_path):
    path = _write(tmp_path, {"name": "S3", "degree": 3, "generators": ["(1 2)", "(1 2"]})
    with pytest.raises(corpus.CorpusError, match=r"g\.json:\d+: generator 1: unclosed"):
        corpus.load_group_file(path)


def test_load_group_file_bad_json(tmp_path):
    path = _write(tmp_path, None, raw='{"name": "S3",\n "degree": 3,\n "generators": [}\n')
    with pytest.raises(corpus.CorpusError, match=r"g\.json:3:"):
        corpus.load_group_file(path)


def test_load_group_file_missing_field(tmp_path):
    path = _write(tmp_path, {"name": "S3", "generators": []})
    with pytest.raises(corpus.CorpusError, match="degree"):
        corpus.load_group_file(path)


def test_resolve(tmp_path):
    assert corpus.resolve("s4").name == "S4"
    path = _write(tmp_path, {"name": "mine", "degree": 4, "generators": ["(1 2 3 4)"]})
    assert corpus.resolve(str(path)).group().order == 4
    with pytest.raises(KeyError):
        corpus.resolve("nope")


def test_select():
    assert all(e.expected_order <= 100 for e in corpus.select(max_order=100))
    assert [e.name for e in corpus.select(names=["S3", "A5"])] == ["S3", "A5"]
    assert {e.name for e in corpus.select(tags=["minimal_simple"])} == {
        "A5", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)", "PSL(2,13)"}
