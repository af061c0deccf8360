"""Clique-reduction instance generators for disjoint-path stress tests.

All three builders start from the same two-colored construction: ``k`` rows
of ``n`` gadgets, row connectors ``r<i>`` joined by b-edges and control nodes
``c<i>`` / ``c<i1>_<i2>`` joined by a-edges.  The input graph has a k-clique
iff the resulting instance has the disjoint path pair described by
``GadgetInstance.question``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Edge, Graph

KINDS = ("two-color", "mono", "edge-disjoint")


def a_path_length(k: int) -> int:
    """Target length of the a-colored path in the two-colored instance."""
    return k * (k - 1) // 2 * 5 + 3 * k


def edge_disjoint_stretch(k: int) -> int:
    """Length of the path replacing each b-edge in the edge-disjoint variant."""
    return 5 * k * k + 3 * k + 1


def gadget_node(i: int, j: int, side: str, level: int) -> str:
    return f"G[{i}][{j}].{side}{level}"


def row_node(i: int) -> str:
    return f"r{i}"


def control_node(i: int, i2: int | None = None) -> str:
    return f"c{i}" if i2 is None else f"c{i}_{i2}"


@dataclass(frozen=True)
class GadgetInstance:
    kind: str
    k: int
    graph: Graph
    s1: str
    t1: str
    s2: str
    t2: str
    path_length: int
    node_order: tuple
    extra: dict = field(default_factory=dict, hash=False, compare=False)

    @property
    def question(self) -> str:
        if self.kind == "two-color":
            return (
                f"node-disjoint a-path {self.s1}->{self.t1} of length {self.path_length}"
                f" and b-path {self.s2}->{self.t2}"
            )
        mode = "edge-disjoint trails" if self.kind == "edge-disjoint" else "node-disjoint paths"
        return (
            f"{mode} {self.s1}->{self.t1} of length {self.path_length}"
            f" and {self.s2}->{self.t2}"
        )

    def metadata(self) -> dict:
        meta = {
            "kind": self.kind,
            "k": self.k,
            "n": len(self.node_order),
            "input_nodes": [str(v) for v in self.node_order],
            "path_length": self.path_length,
            "terminals": {"s1": self.s1, "t1": self.t1, "s2": self.s2, "t2": self.t2},
            "nodes": len(self.graph.nodes),
            "edges": len(self.graph.edges),
            "question": self.question,
        }
        meta.update(self.extra)
        return meta


def _numbering(g: Graph) -> tuple:
    def key(v):
        text = str(v)
        return (0, int(text), text) if text.lstrip("-").isdigit() else (1, 0, text)

    return tuple(sorted(g.nodes, key=key))


def _adjacency(g: Graph, order) -> set:
    index = {v: x for x, v in enumerate(order, 1)}
    pairs = set()
    for e in g.edges:
        if e.src != e.dst:
            x, y = index[e.src], index[e.dst]
            pairs.add((x, y))
            pairs.add((y, x))
    return pairs


def _two_color_edges(n: int, k: int, adjacent: set) -> tuple[list, list]:
    """Return (a_edges, b_edges) of the two-colored construction."""
    a_edges, b_edges = [], []

    def u_at(i, j, level):
        return gadget_node(i, j, "u", level)

    def v_at(i, j, level):
        return gadget_node(i, j, "v", level)

    for i in range(1, k + 1):
        for j in range(1, n + 1):
            for level in range(1, k + 2):
                a_edges.append(Edge(u_at(i, j, level), "a", v_at(i, j, level)))
            for level in range(1, k + 1):
                b_edges.append(Edge(u_at(i, j, level), "b", u_at(i, j, level + 1)))
                b_edges.append(Edge(v_at(i, j, level), "b", v_at(i, j, level + 1)))

        b_edges.append(Edge(row_node(i), "b", u_at(i, 1, 1)))
        b_edges.append(Edge(row_node(i), "b", v_at(i, 2, 1)))
        b_edges.append(Edge(u_at(i, n - 1, k + 1), "b", row_node(i + 1)))
        b_edges.append(Edge(v_at(i, n, k + 1), "b", row_node(i + 1)))
        for j in range(1, n):
            b_edges.append(Edge(u_at(i, j, k + 1), "b", u_at(i, j + 1, 1)))
            b_edges.append(Edge(v_at(i, j, k + 1), "b", v_at(i, j + 1, 1)))
        for j in range(1, n - 1):
            b_edges.append(Edge(u_at(i, j, k + 1), "b", v_at(i, j + 2, 1)))

    for j in range(1, n + 1):
        a_edges.append(Edge(control_node(1), "a", u_at(1, j, 2)))
        for i in range(1, k):
            a_edges.append(Edge(v_at(i, j, k + 1), "a", control_node(i + 1)))
            a_edges.append(Edge(control_node(i + 1), "a", u_at(i + 1, j, i + 2)))
        a_edges.append(Edge(v_at(k, j, k + 1), "a", control_node(k + 1)))

    for i1 in range(1, k + 1):
        for i2 in range(i1 + 1, k + 1):
            hub = control_node(i1, i2)
            for j in range(1, n + 1):
                a_edges.append(Edge(v_at(i1, j, i2), "a", hub))
                a_edges.append(Edge(hub, "a", u_at(i2, j, i1)))
            for x, y in sorted(adjacent):
                a_edges.append(Edge(v_at(i2, x, i1), "a", u_at(i1, y, i2 + 1)))
    return a_edges, b_edges


def _all_nodes(n: int, k: int) -> list:
    nodes = [
        gadget_node(i, j, side, level)
        for i in range(1, k + 1)
        for j in range(1, n + 1)
        for side in "uv"
        for level in range(1, k + 2)
    ]
    nodes += [row_node(i) for i in range(1, k + 2)]
    nodes += [control_node(i) for i in range(1, k + 2)]
    nodes += [control_node(i1, i2) for i1 in range(1, k + 1) for i2 in range(i1 + 1, k + 1)]
    return nodes


def _check(g: Graph, k: int, order) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(order):
        raise ValueError(f"k={k} exceeds the number of nodes ({len(order)})")


def _stretch(edge: Edge, length: int) -> list:
    """Replace ``edge`` by a path of ``length`` edges with the same label."""
    if length == 1:
        return [edge]
    inner = [f"{edge.src}~{edge.dst}.{m}" for m in range(1, length)]
    chain = [edge.src] + inner + [edge.dst]
    return [Edge(x, edge.label, y) for x, y in zip(chain, chain[1:])]


def clique_gadget_two_color(g: Graph, k: int) -> GadgetInstance:
    """Two-colored instance: a-path of exact length from c1 to c(k+1) plus a
    node-disjoint b-path from r1 to r(k+1).

    Input nodes are numbered 1..n in numeric (then textual) order; edges are
    read as undirected.
    """
    order = _numbering(g)
    _check(g, k, order)
    a_edges, b_edges = _two_color_edges(len(order), k, _adjacency(g, order))
    graph = Graph(a_edges + b_edges, _all_nodes(len(order), k))
    return GadgetInstance(
        "two-color", k, graph,
        control_node(1), control_node(k + 1), row_node(1), row_node(k + 1),
        a_path_length(k), order,
        {"b_edges": len(b_edges)},
    )


def clique_gadget_monochrome(g: Graph, k: int) -> GadgetInstance:
    """Every b-edge becomes a path of k' edges so colors no longer matter."""
    order = _numbering(g)
    _check(g, k, order)
    target = a_path_length(k)
    a_edges, b_edges = _two_color_edges(len(order), k, _adjacency(g, order))
    stretched = [e2 for e in b_edges for e2 in _stretch(e, target)]
    graph = Graph(a_edges + stretched, _all_nodes(len(order), k))
    return GadgetInstance(
        "mono", k, graph,
        control_node(1), control_node(k + 1), row_node(1), row_node(k + 1),
        target, order,
        {"b_edges": len(b_edges), "b_path_length": target},
    )


def split_in(v) -> str:
    return f"{v}.in"


def split_out(v) -> str:
    return f"{v}.out"


def clique_gadget_edge_disjoint(g: Graph, k: int) -> GadgetInstance:
    """Node-pair splitting plus long b-paths, for the edge-disjoint trail
    question.

    Every construction node v becomes ``v.in -a-> v.out``; b-edges become
    paths of ``5k^2+3k+1`` edges.  The exact length a matching first trail
    must have is ``2k'+1`` (each of the k'+1 nodes on the a-path contributes
    its split edge); both numbers are reported.
    """
    order = _numbering(g)
    _check(g, k, order)
    base_nodes = _all_nodes(len(order), k)
    a_edges, b_edges = _two_color_edges(len(order), k, _adjacency(g, order))
    stretch = edge_disjoint_stretch(k)
    edges = [Edge(split_in(v), "a", split_out(v)) for v in base_nodes]
    edges += [Edge(split_out(e.src), "a", split_in(e.dst)) for e in a_edges]
    for e in b_edges:
        edges += _stretch(Edge(split_out(e.src), "b", split_in(e.dst)), stretch)
    graph = Graph(edges)
    first_length = 2 * a_path_length(k) + 1
    return GadgetInstance(
        "edge-disjoint", k, graph,
        split_in(control_node(1)), split_out(control_node(k + 1)),
        split_in(row_node(1)), split_out(row_node(k + 1)),
        first_length, order,
        {"b_edges": len(b_edges), "b_path_length": stretch, "k_new": stretch},
    )


def expected_counts(kind: str, n: int, undirected_edges: int, k: int) -> tuple[int, int]:
    """Closed-form (node count, edge count) for a generated instance."""
    nodes = k * n * 2 * (k + 1) + k * (k - 1) // 2 + 2 * (k + 1)
    b_count = k * n * 2 * k + k * (2 + 2 + 2 * (n - 1) + max(n - 2, 0))
    a_count = (
        k * n * (k + 1)
        + 2 * n * k
        + n * k * (k - 1)
        + k * (k - 1) * undirected_edges
    )
    if kind == "two-color":
        return nodes, a_count + b_count
    if kind == "mono":
        extra = b_count * (a_path_length(k) - 1)
        return nodes + extra, a_count + b_count + extra
    if kind == "edge-disjoint":
        extra = b_count * (edge_disjoint_stretch(k) - 1)
        return 2 * nodes + extra, nodes + a_count + b_count + extra
    raise ValueError(f"unknown gadget kind {kind!r}")


def build_gadget(kind: str, g: Graph, k: int) -> GadgetInstance:
    builders = {
        "two-color": clique_gadget_two_color,
        "mono": clique_gadget_monochrome,
        "edge-disjoint": clique_gadget_edge_disjoint,
    }
    if kind not in builders:
        raise ValueError(f"unknown gadget kind {kind!r}")
    return builders[kind](g, k)
