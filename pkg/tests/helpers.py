"""Random instance builders shared by the test modules."""

import random

from rpqkit.graph import Graph, PointedGraph

# filled by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []


def random_graph(rng: random.Random, n: int, labels="ab", density=0.3) -> Graph:
    nodes = [f"v{i}" for i in range(n)]
    edges = [
        (u, rng.choice(labels), v)
        for u in nodes
        for v in nodes
        if u != v and rng.random() < density
    ]
    return Graph(edges, nodes)


def random_instance(rng, n, labels="ab", density=0.3, same_endpoints=0.1) -> PointedGraph:
    g = random_graph(rng, n, labels, density)
    nodes = sorted(g.nodes)
    if rng.random() < same_endpoints:
        s = t = rng.choice(nodes)
    else:
        s, t = rng.sample(nodes, 2)
    return PointedGraph(g, s, t)


def graph_of(*triples, nodes=()) -> Graph:
    """Graph from ``"u a v"`` strings."""
    return Graph([tuple(t.split()) for t in triples], nodes)


def planted_instance(rng, n, k, labels="ab", density=0.05):
    """Sparse random graph on n nodes with a simple s-t path of exactly k
    edges planted through fresh random nodes."""
    g = random_graph(rng, n, labels, density)
    nodes = sorted(g.nodes)
    route = rng.sample(nodes, k + 1)
    planted = [(u, rng.choice(labels), v) for u, v in zip(route, route[1:])]
    return PointedGraph(Graph(list(g.edges) + planted, nodes), route[0], route[-1])
