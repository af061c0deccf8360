import pytest

from rpqkit.engine import enumerate_answers, evaluate, plan
from rpqkit.graph import Path, PointedGraph
from rpqkit.oracle import oracle

from helpers import graph_of, random_instance

CATALOG = [
    "a*", "a*b", "(aa)*", "a*ba*", "a{2}b*", "a{2}ba*", "(a+b){2}a*", "abc*",
    "a?b?", "a{3}", "(a+b)*", "a+", "ab", "a{2}a*", "a*b?",
]
SEMANTICS = ["arbitrary", "shortest", "simple", "trail"]


@pytest.mark.parametrize(
    "query, semantics, route",
    [
        ("a*b", "arbitrary", "product"),
        ("a*b", "shortest", "product"),
        ("a?b?", "simple", "downward-closed"),
        ("a*b", "simple", "ste"),
        ("a*b", "trail", "ste"),
        ("(aa)*", "simple", "exhaustive"),
        ("a∅", "simple", "empty"),
        ("aaaaab*", "simple", "exhaustive"),
    ],
)
def test_plan(query, semantics, route):
    assert plan(query, semantics) == route


def test_plan_budget_and_unknown_semantics():
    assert plan("aaaaab*", "simple", budget=5) == "ste"
    assert plan("aaaab*", "simple", budget=3) == "exhaustive"
    with pytest.raises(ValueError):
        plan("a", "walks")


def test_enumeration_matches_oracle_for_catalog(rng):
    for _ in range(12):
        pg = random_instance(rng, rng.randint(2, 6), "abc"[: rng.randint(1, 3)], 0.3)
        for expr in CATALOG:
            for semantics in SEMANTICS:
                got = list(enumerate_answers(pg, expr, semantics, max_length=10))
                assert len(got) == len(set(got))
                assert set(got) == oracle(pg, expr, semantics, 10), (expr, semantics)


def test_radix_order_where_promised(rng):
    for _ in range(20):
        pg = random_instance(rng, rng.randint(2, 6), "ab", 0.35)
        for expr, semantics in [("a*b", "arbitrary"), ("(a+b)*", "shortest"), ("a*b?", "simple"), ("(aa)*", "simple")]:
            got = list(enumerate_answers(pg, expr, semantics, max_length=8))
            assert all(a.radix_key() < b.radix_key() for a, b in zip(got, got[1:]))


def test_evaluate_returns_a_member_or_none(rng):
    for _ in range(40):
        pg = random_instance(rng, rng.randint(2, 6), "ab", 0.35)
        for expr in ["a*b", "(aa)*", "a?b?"]:
            for semantics in SEMANTICS:
                truth = oracle(pg, expr, semantics, 10)
                found = evaluate(pg, expr, semantics)
                assert (found is None) == (not truth)
                if semantics == "arbitrary" and found is not None:
                    assert found in oracle(pg, expr, semantics, len(found))
                elif found is not None:
                    assert found in truth


def test_missing_endpoints_and_empty_language():
    pg = PointedGraph(graph_of("s a t"), "s", "nowhere")
    assert list(enumerate_answers(pg, "a", "simple")) == []
    assert evaluate(pg, "a") is None
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    assert list(enumerate_answers(pg, "∅", "trail")) == []


def test_epsilon_at_same_endpoints():
    pg = PointedGraph(graph_of("s a x", "x a s"), "s", "s")
    empty = Path((), start="s")
    assert next(iter(enumerate_answers(pg, "a*", "simple"))) == empty
    assert list(enumerate_answers(pg, "a*", "trail")) == [empty, Path.from_nodes(pg.graph, ["s", "x", "s"])]
