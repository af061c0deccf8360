"""Brute-force ground truth, independent of the automaton code.

Matching uses Brzozowski derivatives on the expression tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, Path, PointedGraph
from .lang import (
    Atom,
    Concat,
    Empty,
    Epsilon,
    Opt,
    Plus,
    Star,
    Union,
    as_ast,
    concat,
    desugar,
    nullable,
    size,
    union,
)

MAX_ORACLE_NODES = 12
DEFAULT_MAX_LENGTH = 10
SEMANTICS = ("arbitrary", "shortest", "simple", "trail")


class OracleSizeError(ValueError):
    pass


@lru_cache(maxsize=None)
def derive(node, symbol):
    """Brzozowski derivative of a desugared expression by one symbol."""
    if isinstance(node, (Empty, Epsilon)):
        return Empty()
    if isinstance(node, Atom):
        return Epsilon() if symbol in node.symbols else Empty()
    if isinstance(node, Union):
        return union(*(derive(i, symbol) for i in node.items))
    if isinstance(node, Concat):
        first, rest = node.items[0], concat(*node.items[1:])
        out = concat(derive(first, symbol), rest)
        if nullable(first):
            out = union(out, derive(rest, symbol))
        return out
    if isinstance(node, Opt):
        return derive(node.item, symbol)
    if isinstance(node, (Star, Plus)):
        return concat(derive(node.item, symbol), Star(node.item))
    raise TypeError(f"unexpected node {node!r}")


def matches(expr, word) -> bool:
    node = desugar(as_ast(expr))
    for a in word:
        node = derive(node, a)
        if isinstance(node, Empty):
            return False
    return nullable(node)


@dataclass(frozen=True)
class OracleConfig:
    expression: object
    semantics: str = "simple"
    max_path_length: int = DEFAULT_MAX_LENGTH
    override_guard: bool = False


def _guard(g: Graph, override: bool):
    if not override and len(g.nodes) > MAX_ORACLE_NODES:
        raise OracleSizeError(f"oracle refuses graphs with more than {MAX_ORACLE_NODES} nodes")


def _dfs(g, s, t, node, semantics, max_len):
    found = set()
    edges = []
    used_nodes = {s}
    used_edges = set()

    def go(v, d):
        if v == t and nullable(d):
            found.add(Path(tuple(edges), start=s))
        if semantics == "arbitrary" and len(edges) >= max_len:
            return
        for e in g.out_edges(v):
            if semantics == "simple" and e.dst in used_nodes:
                continue
            if semantics == "trail" and e in used_edges:
                continue
            d2 = derive(d, e.label)
            if isinstance(d2, Empty):
                continue
            fresh = e.dst not in used_nodes
            edges.append(e)
            used_nodes.add(e.dst)
            used_edges.add(e)
            go(e.dst, d2)
            edges.pop()
            used_edges.discard(e)
            if fresh:
                used_nodes.discard(e.dst)

    go(s, node)
    return found


def oracle_enumerate(pg: PointedGraph, cfg: OracleConfig) -> set:
    """Exact answer set for one query under one semantics."""
    g, s, t = pg
    _guard(g, cfg.override_guard)
    if cfg.semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {cfg.semantics!r}")
    node = desugar(as_ast(cfg.expression))
    if cfg.semantics == "shortest":
        length = _shortest_length(g, s, t, node)
        if length is None:
            return set()
        return {p for p in _dfs(g, s, t, node, "arbitrary", length) if len(p) == length}
    return _dfs(g, s, t, node, cfg.semantics, cfg.max_path_length)


def _shortest_length(g, s, t, node):
    """Breadth-first search over (graph node, derivative) pairs."""
    bound = len(g.nodes) * (size(node) + 1)
    seen = {(s, node)}
    layer = [(s, node)]
    for length in range(bound + 1):
        if any(v == t and nullable(d) for v, d in layer):
            return length
        nxt = []
        for v, d in layer:
            for e in g.out_edges(v):
                d2 = derive(d, e.label)
                if not isinstance(d2, Empty) and (e.dst, d2) not in seen:
                    seen.add((e.dst, d2))
                    nxt.append((e.dst, d2))
        if not nxt:
            return None
        layer = nxt
    return None


def oracle(pg: PointedGraph, expression, semantics: str = "simple", max_path_length: int = DEFAULT_MAX_LENGTH) -> set:
    return oracle_enumerate(pg, OracleConfig(expression, semantics, max_path_length))


# ---- two disjoint paths -------------------------------------------------------


def _reaches(g: Graph, s, t, banned_nodes=(), banned_edges=(), labels=None) -> bool:
    banned = set(banned_nodes)
    if s in banned or t in banned:
        return False
    bad = set(banned_edges)
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            return True
        for e in g.out_edges(v):
            if e in bad or e.dst in banned or e.dst in seen:
                continue
            if labels is not None and e.label not in labels:
                continue
            seen.add(e.dst)
            queue.append(e.dst)
    return False


def _distances_to(g: Graph, t, labels=None) -> dict:
    dist = {t: 0}
    queue = deque([t])
    while queue:
        v = queue.popleft()
        for e in g.in_edges(v):
            if labels is not None and e.label not in labels:
                continue
            if e.src not in dist:
                dist[e.src] = dist[v] + 1
                queue.append(e.src)
    return dist


def oracle_two_disjoint(
    g: Graph,
    s1,
    t1,
    s2,
    t2,
    k: int,
    length_mode: str = "exact",
    disjointness: str = "node",
    labels1=None,
    labels2=None,
    max_nodes: int | None = MAX_ORACLE_NODES,
) -> bool:
    """Do p1 (s1 to t1, length constrained by k) and p2 (s2 to t2) exist,
    node-disjoint simple paths or edge-disjoint trails?

    ``labels1``/``labels2`` optionally restrict the labels each path may use.
    """
    if max_nodes is not None and len(g.nodes) > max_nodes:
        raise OracleSizeError(f"instance has more than {max_nodes} nodes")
    if length_mode not in ("exact", "atleast", "atmost"):
        raise ValueError(f"unknown length mode {length_mode!r}")
    if disjointness not in ("node", "edge"):
        raise ValueError(f"unknown disjointness {disjointness!r}")
    node_mode = disjointness == "node"
    dist = _distances_to(g, t1, labels1)
    if s1 not in dist:
        return False
    path_nodes = [s1]
    path_edges = []
    on_path = {s1}
    used_edges = set()

    def ok_length(n):
        if length_mode == "exact":
            return n == k
        if length_mode == "atleast":
            return n >= k
        return n <= k

    def second_exists():
        if node_mode:
            return _reaches(g, s2, t2, banned_nodes=on_path, labels=labels2)
        return _reaches(g, s2, t2, banned_edges=used_edges, labels=labels2)

    def go(v):
        n = len(path_edges)
        if v == t1 and ok_length(n) and second_exists():
            return True
        if node_mode and v == t1:
            return False
        remaining = None if length_mode == "atleast" else k - n
        for e in g.out_edges(v):
            if labels1 is not None and e.label not in labels1:
                continue
            if node_mode and e.dst in on_path:
                continue
            if not node_mode and e in used_edges:
                continue
            if e.dst not in dist:
                continue
            if remaining is not None and dist[e.dst] + 1 > remaining:
                continue
            path_edges.append(e)
            used_edges.add(e)
            fresh = e.dst not in on_path
            on_path.add(e.dst)
            # blocking only grows with the prefix, so a dead p2 prunes the branch
            if second_exists() and go(e.dst):
                return True
            path_edges.pop()
            used_edges.discard(e)
            if fresh:
                on_path.discard(e.dst)
        return False

    return go(s1)
