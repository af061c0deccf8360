import itertools
import statistics

from rpqkit.bench import bench_stream
from rpqkit.graph import Edge, Graph, Path, PointedGraph
from rpqkit.nfa import to_nfa
from rpqkit.oracle import oracle
from rpqkit.product import (
    edge_alphabet_nfa,
    enumerate_paths,
    enumerate_shortest_paths,
    product,
    shortest_match,
    smallest_word_of_length,
)

from helpers import graph_of, random_instance


def test_product_cardinality_bound():
    g = graph_of("s a x", "x a t", "t a s")
    prod = product(PointedGraph(g, "s", "t"), "a*", trim=False)
    assert len(prod) <= 3 * to_nfa("a*").n_states


def test_product_on_path_graph():
    g = graph_of("s a m", "m b t")
    prod = product(PointedGraph(g, "s", "t"), "ab")
    assert prod.accept
    assert list(enumerate_paths(PointedGraph(g, "s", "t"), "ab")) == [Path.from_nodes(g, ["s", "m", "t"])]


def test_empty_language_product():
    g = graph_of("s a t")
    prod = product(PointedGraph(g, "s", "t"), "∅")
    assert not prod.accept
    assert smallest_word_of_length(edge_alphabet_nfa(prod), 0) is None


def test_edge_alphabet_single_word():
    g = graph_of("s a m", "m b t")
    nfa = edge_alphabet_nfa(product(PointedGraph(g, "s", "t"), "ab"))
    assert smallest_word_of_length(nfa, 2) == (Edge("s", "a", "m"), Edge("m", "b", "t"))
    assert smallest_word_of_length(nfa, 1) is None
    assert smallest_word_of_length(nfa, 3) is None


def test_smallest_word_length_zero():
    g = graph_of("s a t")
    same = edge_alphabet_nfa(product(PointedGraph(g, "s", "s"), "a*"))
    assert smallest_word_of_length(same, 0) == ()
    other = edge_alphabet_nfa(product(PointedGraph(g, "s", "t"), "a*"))
    assert smallest_word_of_length(other, 0) is None


def test_smallest_word_prefers_smaller_edge():
    g = graph_of("s a t", "s b t")
    nfa = edge_alphabet_nfa(product(PointedGraph(g, "s", "t"), "a+b"))
    assert smallest_word_of_length(nfa, 1) == (Edge("s", "a", "t"),)


def test_smallest_word_in_diamond_matches_bruteforce():
    g = graph_of("s b x", "x a t", "s a y", "y b t")
    nfa = edge_alphabet_nfa(product(PointedGraph(g, "s", "t"), "(a+b)*"))
    words = [w for w in itertools.product(sorted(g.edges), repeat=2) if nfa.accepts(w)]
    assert smallest_word_of_length(nfa, 2) == min(words)


def test_acyclic_two_paths_shorter_first():
    g = graph_of("s a t", "s b m", "m a t")
    paths = list(enumerate_paths(PointedGraph(g, "s", "t"), "(a+b)*"))
    assert [len(p) for p in paths] == [1, 2]


def test_two_cycle_odd_lengths():
    pg = PointedGraph(graph_of("s a t", "t a s"), "s", "t")
    got = list(enumerate_paths(pg, "a*", max_length=9))
    assert [len(p) for p in got] == [1, 3, 5, 7, 9]
    assert set(got) == oracle(pg, "a*", "arbitrary", 9)


def test_empty_stream_for_empty_language():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    assert list(enumerate_paths(pg, "b")) == []
    assert list(enumerate_shortest_paths(pg, "b")) == []


def test_shortest_paths_examples():
    diamond = PointedGraph(graph_of("s a x", "x a t", "s a y", "y a t", "s b z", "z a w", "w a t"), "s", "t")
    assert [p.nodes for p in enumerate_shortest_paths(diamond, "(a+b)*")] == [("s", "x", "t"), ("s", "y", "t")]
    unique = PointedGraph(graph_of("s a t", "s a m", "m a t"), "s", "t")
    assert [len(p) for p in enumerate_shortest_paths(unique, "a*")] == [1]


def test_enumeration_matches_oracle(rng):
    catalog = ["a*", "a*b", "(aa)*", "a*ba*", "abc*", "a?b?", "(a+b)*", "a{2}a*"]
    for _ in range(40):
        pg = random_instance(rng, rng.randint(2, 6), "abc")
        for expr in catalog:
            got = list(enumerate_paths(pg, expr, max_length=8))
            assert len(got) == len(set(got))
            assert set(got) == oracle(pg, expr, "arbitrary", 8)
            assert all(a.radix_key() < b.radix_key() for a, b in zip(got, got[1:]))
            shortest = list(enumerate_shortest_paths(pg, expr))
            assert set(shortest) == oracle(pg, expr, "shortest")


def test_shortest_match_is_radix_smallest(rng):
    for _ in range(40):
        pg = random_instance(rng, rng.randint(2, 6), "ab")
        for expr in ["a*b", "(a+b)*", "a{2}(a+b)*"]:
            first = next(iter(enumerate_paths(pg, expr, max_length=12)), None)
            found = shortest_match(pg.graph, pg.source, pg.target, to_nfa(expr))
            assert found == first


def test_delay_grows_with_output_length_only():
    # soft check: per-output delay normalised by output length stays flat
    pg = PointedGraph(Graph([("s", "a", "t"), ("t", "a", "s")]), "s", "t")
    report = bench_stream(enumerate_paths(pg, "a*"), limit=50, keep_outputs=True)
    assert report.count == 50
    normalised = [gap / len(p) for gap, p in zip(report.inter_arrival, report.outputs[1:])]
    assert max(normalised) <= 50 * statistics.median(normalised) + 1e-3
