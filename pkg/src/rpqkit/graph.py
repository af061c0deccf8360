"""Edge-labeled directed graphs and paths."""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple


class Edge(NamedTuple):
    """A labeled edge. Tuple order gives the (src, label, dst) ordering."""

    src: object
    label: object
    dst: object


class Graph:
    """Immutable edge-labeled directed graph with set semantics on edges."""

    __slots__ = ("_nodes", "_edges", "_out", "_in")

    def __init__(self, edges: Iterable = (), nodes: Iterable = ()):
        edge_set = frozenset(Edge(*e) for e in edges)
        node_set = set(nodes)
        for e in edge_set:
            node_set.add(e.src)
            node_set.add(e.dst)
        self._nodes = frozenset(node_set)
        self._edges = edge_set
        out = {v: [] for v in node_set}
        inc = {v: [] for v in node_set}
        for e in sorted(edge_set):
            out[e.src].append(e)
            inc[e.dst].append(e)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    @property
    def edges(self) -> frozenset:
        return self._edges

    def out_edges(self, v) -> tuple:
        """Out-edges of ``v`` sorted by (src, label, dst)."""
        return self._out.get(v, ())

    def in_edges(self, v) -> tuple:
        return self._in.get(v, ())

    @property
    def labels(self) -> list:
        return sorted({e.label for e in self._edges})

    @property
    def size(self) -> int:
        return len(self._nodes) + len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._nodes

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self._nodes == other._nodes
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self._nodes, self._edges))

    def __repr__(self):
        return f"Graph(|V|={len(self._nodes)}, |E|={len(self._edges)})"

    def sorted_nodes(self) -> list:
        return sorted(self._nodes)

    def without(self, nodes: Iterable = (), edges: Iterable = ()) -> "Graph":
        """Subgraph with the given nodes (and their edges) and edges removed."""
        drop_nodes = set(nodes)
        drop_edges = set(edges)
        if not drop_nodes and not drop_edges:
            return self
        kept = [
            e
            for e in self._edges
            if e not in drop_edges
            and e.src not in drop_nodes
            and e.dst not in drop_nodes
        ]
        return Graph(kept, self._nodes - drop_nodes)

    def restrict_labels(self, labels: Iterable) -> "Graph":
        allowed = set(labels)
        return Graph((e for e in self._edges if e.label in allowed), self._nodes)

    def reversed(self) -> "Graph":
        return Graph((Edge(e.dst, e.label, e.src) for e in self._edges), self._nodes)

    def relabeled(self, mapping) -> "Graph":
        """Apply ``mapping(edge) -> label`` to every edge."""
        return Graph((Edge(e.src, mapping(e), e.dst) for e in self._edges), self._nodes)

    # ---- text format -------------------------------------------------

    @classmethod
    def from_tsv(cls, text: str, undirected: bool = False) -> "Graph":
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3 or not all(parts):
                raise ValueError(f"line {lineno}: expected src<TAB>label<TAB>dst")
            src, label, dst = parts
            edges.append(Edge(src, label, dst))
            if undirected:
                edges.append(Edge(dst, label, src))
        return cls(edges)

    @classmethod
    def read_tsv(cls, path, undirected: bool = False) -> "Graph":
        with open(path, encoding="utf-8") as fh:
            return cls.from_tsv(fh.read(), undirected=undirected)

    def to_tsv(self) -> str:
        return "".join(f"{e.src}\t{e.label}\t{e.dst}\n" for e in sorted(self._edges))


class PointedGraph(NamedTuple):
    graph: Graph
    source: object
    target: object

    def check(self) -> "PointedGraph":
        if self.source not in self.graph or self.target not in self.graph:
            raise ValueError("source and target must be graph nodes")
        return self


class Path:
    """A sequence of adjacent edges; a zero-length path sits on one node."""

    __slots__ = ("start", "edges")

    def __init__(self, edges: Iterable = (), start=None):
        edges = tuple(Edge(*e) for e in edges)
        if edges:
            if start is not None and start != edges[0].src:
                raise ValueError("start node does not match first edge")
            start = edges[0].src
            for a, b in zip(edges, edges[1:]):
                if a.dst != b.src:
                    raise ValueError(f"edges {a} and {b} are not adjacent")
        elif start is None:
            raise ValueError("a zero-length path needs a start node")
        self.start = start
        self.edges = edges

    @classmethod
    def from_nodes(cls, graph: Graph, nodes, labels=None) -> "Path":
        """Build a path through ``nodes``, picking the smallest edge per hop."""
        nodes = list(nodes)
        edges = []
        for i, (u, v) in enumerate(zip(nodes, nodes[1:])):
            want = None if labels is None else labels[i]
            for e in graph.out_edges(u):
                if e.dst == v and (want is None or e.label in want):
                    edges.append(e)
                    break
            else:
                raise ValueError(f"no edge from {u!r} to {v!r}")
        return cls(edges, start=nodes[0])

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def end(self):
        return self.edges[-1].dst if self.edges else self.start

    @property
    def nodes(self) -> tuple:
        return (self.start,) + tuple(e.dst for e in self.edges)

    @property
    def word(self) -> tuple:
        return tuple(e.label for e in self.edges)

    def node(self, i: int):
        """The node p[i]."""
        return self.nodes[i]

    def is_simple(self) -> bool:
        nodes = self.nodes
        return len(set(nodes)) == len(nodes)

    def is_trail(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def radix_key(self) -> tuple:
        return (len(self.edges), self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Path)
            and self.edges == other.edges
            and self.start == other.start
        )

    def __hash__(self):
        return hash((self.start, self.edges))

    def __lt__(self, other: "Path") -> bool:
        return self.radix_key() < other.radix_key()

    def __repr__(self):
        return f"Path({format_path(self)})"


def path_word(p: Path) -> tuple:
    return p.word


def is_simple(p: Path) -> bool:
    return p.is_simple()


def is_trail(p: Path) -> bool:
    return p.is_trail()


def subpath(p: Path, i: int, j: int) -> Path:
    """The subpath p[i, j] made of edges i+1 .. j."""
    if not 0 <= i <= j <= len(p):
        raise IndexError(f"subpath bounds {i}, {j} out of range for length {len(p)}")
    return Path(p.edges[i:j], start=p.node(i))


def concat(p1: Path, p2: Path) -> Path:
    if p1.end != p2.start:
        raise ValueError(f"cannot concatenate: {p1.end!r} != {p2.start!r}")
    return Path(p1.edges + p2.edges, start=p1.start)


def format_path(p: Path) -> str:
    """Render as ``v0 -a-> v1 -b-> v2``."""
    parts = [str(p.start)]
    for e in p.edges:
        parts.append(f"-{e.label}-> {e.dst}")
    return " ".join(parts)


def shortest_path(g: Graph, frm, to, forbidden_nodes=(), forbidden_edges=()):
    """Minimum-length path avoiding the forbidden sets, radix-smallest on ties.

    The start node is never treated as forbidden.  Returns ``None`` when no
    path exists.
    """
    banned = set(forbidden_nodes)
    banned.discard(frm)
    bad_edges = set(forbidden_edges)
    if frm not in g or to not in g or to in banned:
        return None
    dist = {to: 0}
    queue = deque([to])
    while queue:
        v = queue.popleft()
        if v == frm:
            break
        for e in g.in_edges(v):
            u = e.src
            if u in dist or u in banned or e in bad_edges:
                continue
            dist[u] = dist[v] + 1
            queue.append(u)
    if frm not in dist:
        return None
    edges = []
    cur = frm
    while cur != to:
        want = dist[cur] - 1
        for e in g.out_edges(cur):
            if e not in bad_edges and dist.get(e.dst) == want and e.dst not in banned:
                edges.append(e)
                cur = e.dst
                break
    return Path(edges, start=frm)
