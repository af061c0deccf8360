"""Reductions between trail and simple-path problems."""

from __future__ import annotations

from .graph import Edge, Graph, Path, PointedGraph

SPLIT_LABEL = "#"
LINE_END_LABEL = "$"

SOURCE, EDGE, TARGET = 0, 1, 2


def head(v) -> str:
    return f"{v}^h"


def tail(v) -> str:
    return f"{v}^t"


def split(g: Graph, terminals=(), label: str = SPLIT_LABEL):
    """Replace each node v by ``head(v) -> tail(v)``.

    Incoming edges enter the head, outgoing edges leave the tail.  Terminal
    pairs (s, t) become (head(s), tail(t)).
    """
    edges = [Edge(head(v), label, tail(v)) for v in g.nodes]
    edges += [Edge(tail(e.src), e.label, head(e.dst)) for e in g.edges]
    nodes = [head(v) for v in g.nodes] + [tail(v) for v in g.nodes]
    moved = [(head(s), tail(t)) for s, t in terminals]
    return Graph(edges, nodes), moved


def split_path(p: Path, label: str = SPLIT_LABEL) -> Path:
    """Image of a simple path of G in Split(G): length 2k + 1."""
    edges = []
    for v, e in zip(p.nodes, p.edges):
        edges.append(Edge(head(v), label, tail(v)))
        edges.append(Edge(tail(v), e.label, head(e.dst)))
    edges.append(Edge(head(p.end), label, tail(p.end)))
    return Path(edges)


def edge_node(e: Edge) -> str:
    return f"[{e.src} {e.label} {e.dst}]"


def line(g: Graph, terminals=(), end_label: str = LINE_END_LABEL):
    """Line-graph variant with terminal stubs.

    Nodes are the edges of ``g`` plus the terminal nodes.  An edge entering
    the node of edge ``e`` carries ``label(e)``; edges entering a terminal
    carry ``end_label``.  Returns the graph, the terminal pairs and the map
    from new node names back to the original edges.
    """
    back = {edge_node(e): e for e in g.edges}
    out = []
    for e in g.edges:
        for f in g.out_edges(e.dst):
            out.append(Edge(edge_node(e), f.label, edge_node(f)))
    term_nodes = set()
    for s, t in terminals:
        term_nodes.update((str(s), str(t)))
        for f in g.out_edges(s):
            out.append(Edge(str(s), f.label, edge_node(f)))
        for e in g.in_edges(t):
            out.append(Edge(edge_node(e), end_label, str(t)))
    if term_nodes & back.keys():
        raise ValueError("terminal name collides with an edge node name")
    return Graph(out, list(back) + sorted(term_nodes)), [(str(s), str(t)) for s, t in terminals], back


def line_path(p: Path, end_label: str = LINE_END_LABEL) -> Path:
    """Image of a trail of G in Line(G): length k + 1."""
    nodes = [str(p.start)] + [edge_node(e) for e in p.edges] + [str(p.end)]
    labels = [e.label for e in p.edges] + [end_label]
    return Path(Edge(u, a, v) for u, a, v in zip(nodes, labels, nodes[1:]))


# ---- trail instances -------------------------------------------------------


def _v(e: Edge) -> tuple:
    return (EDGE, e.src, e.label, e.dst)


def edge_graph(pg: PointedGraph) -> Graph:
    """Line graph whose node for edge e has only out-edges labelled label(e),
    plus the target stub (2,).  The source stub is added per instance."""
    g, _, t = pg
    target = (TARGET,)
    out = []
    for e in g.edges:
        for f in g.out_edges(e.dst):
            out.append(Edge(_v(e), e.label, _v(f)))
        if e.dst == t:
            out.append(Edge(_v(e), e.label, target))
    return Graph(out, [_v(e) for e in g.edges] + [target])


def trail_to_simple_instances(pg: PointedGraph, first_symbol) -> list:
    """One pointed graph per out-edge of s.

    A trail from s to t matching r exists iff some instance has a simple
    path from its source to its target matching ``first_symbol`` r.
    """
    g, s, _ = pg
    base = edge_graph(pg)
    source = (SOURCE,)
    out = []
    for e in g.out_edges(s):
        h = Graph(list(base.edges) + [Edge(source, first_symbol, _v(e))], list(base.nodes) + [source])
        out.append(PointedGraph(h, source, (TARGET,)))
    return out


def trail_instances(pg: PointedGraph) -> list:
    """Instances started directly at the first edge node: a simple path from
    ``v_e`` to the target stub matching r is the image of a trail starting
    with e.  Ordered by the first edge."""
    g, s, _ = pg
    base = edge_graph(pg)
    return [PointedGraph(base, _v(e), (TARGET,)) for e in g.out_edges(s)]


def trail_from_instance_path(p: Path) -> Path:
    """Map a simple path of an instance back to the trail of G."""
    edges = [Edge(*node[1:]) for node in p.nodes if node[0] == EDGE]
    return Path(edges)


def instance_path_from_trail(p: Path) -> Path:
    nodes = [_v(e) for e in p.edges] + [(TARGET,)]
    return Path(Edge(u, e.label, v) for u, e, v in zip(nodes, p.edges, nodes[1:]))
