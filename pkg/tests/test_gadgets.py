import itertools

import pytest

from rpqkit.gadgets import (
    a_path_length,
    build_gadget,
    clique_gadget_two_color,
    control_node,
    edge_disjoint_stretch,
    expected_counts,
    gadget_node,
    row_node,
)
from rpqkit.graph import Graph, shortest_path
from rpqkit.oracle import oracle_two_disjoint

TRIANGLE = Graph([("1", "e", "2"), ("2", "e", "3"), ("1", "e", "3")])
PATH = Graph([("1", "e", "2"), ("2", "e", "3")])


def has_clique(n, pairs, k):
    return any(
        all((x, y) in pairs for x, y in itertools.combinations(c, 2))
        for c in itertools.combinations(range(1, n + 1), k)
    )


def solve(inst):
    mode = "edge" if inst.kind == "edge-disjoint" else "node"
    labels = ({"a"}, {"b"}) if inst.kind == "two-color" else (None, None)
    return oracle_two_disjoint(
        inst.graph, inst.s1, inst.t1, inst.s2, inst.t2, inst.path_length,
        disjointness=mode, labels1=labels[0], labels2=labels[1], max_nodes=None,
    )


def test_length_formulas():
    assert a_path_length(3) == 24
    assert a_path_length(2) == 11
    assert edge_disjoint_stretch(3) == 55


def test_node_names():
    assert gadget_node(1, 2, "u", 3) == "G[1][2].u3"
    assert row_node(4) == "r4"
    assert control_node(2) == "c2" and control_node(1, 3) == "c1_3"


@pytest.mark.parametrize("kind, counts", [("two-color", (83, 171)), ("mono", (1946, 2034)), ("edge-disjoint", (4540, 4628))])
def test_triangle_counts(kind, counts):
    inst = build_gadget(kind, TRIANGLE, 3)
    assert (len(inst.graph.nodes), len(inst.graph.edges)) == counts == expected_counts(kind, 3, 3, 3)


def test_counts_match_closed_form_on_random_graphs(rng):
    for _ in range(10):
        n = rng.randint(3, 6)
        pairs = [p for p in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5]
        g = Graph([(str(x), "e", str(y)) for x, y in pairs], [str(v) for v in range(1, n + 1)])
        k = rng.randint(2, min(n, 4))
        for kind in ("two-color", "mono"):
            inst = build_gadget(kind, g, k)
            assert (len(inst.graph.nodes), len(inst.graph.edges)) == expected_counts(kind, n, len(pairs), k)


def test_two_color_soundness(rng):
    for _ in range(40):
        n = rng.choice([3, 4, 5])
        pairs = {p for p in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.6}
        g = Graph([(str(x), "e", str(y)) for x, y in pairs], [str(v) for v in range(1, n + 1)])
        inst = clique_gadget_two_color(g, 3)
        assert inst.path_length == 24
        assert solve(inst) == has_clique(n, pairs, 3)


def test_mono_b_paths_are_long():
    inst = build_gadget("mono", TRIANGLE, 3)
    b_only = inst.graph.restrict_labels("b")
    hop = shortest_path(b_only, control_node(1), control_node(4))
    assert hop is None or len(hop) >= inst.path_length
    assert inst.extra["b_path_length"] == 24


@pytest.mark.parametrize("kind", ["mono", "edge-disjoint"])
def test_stretched_variants_on_triangle_and_path(kind):
    assert solve(build_gadget(kind, TRIANGLE, 3))
    assert not solve(build_gadget(kind, PATH, 3))


def test_edge_disjoint_metadata():
    inst = build_gadget("edge-disjoint", TRIANGLE, 3)
    meta = inst.metadata()
    assert meta["k_new"] == 55 and meta["path_length"] == 49
    assert meta["nodes"] == 4540
    assert "edge-disjoint" in inst.question


def test_bad_parameters():
    with pytest.raises(ValueError):
        build_gadget("mono", TRIANGLE, 4)
    with pytest.raises(ValueError):
        build_gadget("mono", TRIANGLE, 1)
    with pytest.raises(ValueError):
        build_gadget("plaid", TRIANGLE, 3)
