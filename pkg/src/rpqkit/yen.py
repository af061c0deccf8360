"""Yen-style enumeration of simple paths with a pluggable single-path solver."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .graph import Path, PointedGraph, concat, shortest_path, subpath
from .nfa import as_nfa, is_downward_closed
from .product import shortest_match


class PreconditionError(ValueError):
    pass


class OutputPrefixTree:
    """Trie over the edge sequences of emitted paths."""

    def __init__(self):
        self._root = {}
        self._count = 0
        self._END = object()

    def insert(self, path: Path) -> None:
        node = self._root
        for e in path.edges:
            node = node.setdefault(e, {})
        if self._END in node:
            raise AssertionError(f"path emitted twice: {path}")
        node[self._END] = True
        self._count += 1

    def __contains__(self, path: Path) -> bool:
        node = self._root
        for e in path.edges:
            node = node.get(e)
            if node is None:
                return False
        return self._END in node

    def __len__(self) -> int:
        return self._count

    def next_edges(self, prefix_edges) -> set:
        """Edges that follow ``prefix_edges`` in some emitted path."""
        node = self._root
        for e in prefix_edges:
            node = node.get(e)
            if node is None:
                return set()
        return {e for e in node if e is not self._END}


# ---- language handles ----------------------------------------------------


@dataclass(frozen=True)
class AnyLanguage:
    """Every word; used for plain simple-path enumeration."""

    def derive(self, word) -> "AnyLanguage":
        return self


@dataclass(frozen=True)
class NfaLanguage:
    nfa: object
    states: frozenset

    @classmethod
    def of(cls, query) -> "NfaLanguage":
        nfa = as_nfa(query)
        return cls(nfa, nfa.initial)

    def derive(self, word) -> "NfaLanguage":
        return NfaLanguage(self.nfa, self.nfa.run(tuple(word), self.states))

    def accepts(self, word) -> bool:
        return bool(self.nfa.run(tuple(word), self.states) & self.nfa.final)


# ---- the framework -------------------------------------------------------


def yen_simple_framework(pg: PointedGraph, lang, solver, order: str = "shortest"):
    """Enumerate simple s-t paths whose word lies in ``lang``.

    ``solver(graph, start, target, lang, want_shortest)`` returns a simple
    path from ``start`` to ``target`` in ``graph`` with word in ``lang`` or
    ``None``.  With ``order="shortest"`` candidates leave the queue by
    (length, edge sequence); with ``order="arrival"`` in creation order.
    """
    if order not in ("shortest", "arrival", "radix"):
        raise ValueError(f"unknown order {order!r}")
    g, s, t = pg
    if s not in g or t not in g:
        return
    want_shortest = order != "arrival"
    counter = itertools.count()
    heap = []
    queued = set()

    def push(path):
        if path in queued:
            return
        queued.add(path)
        key = path.radix_key() if want_shortest else next(counter)
        heapq.heappush(heap, (key, next(counter), path))

    first = solver(g, s, t, lang, want_shortest)
    if first is not None:
        push(first)
    emitted = OutputPrefixTree()
    while heap:
        _, _, p = heapq.heappop(heap)
        emitted.insert(p)
        yield p
        nodes = p.nodes
        for i in range(len(p)):
            root = subpath(p, 0, i)
            restricted = g.without(nodes[:i], emitted.next_edges(root.edges))
            spur = solver(restricted, nodes[i], t, lang.derive(root.word), want_shortest)
            if spur is None:
                continue
            cand = concat(root, spur)
            if cand not in emitted:
                push(cand)


def _plain_solver(g, start, target, lang, want_shortest):
    return shortest_path(g, start, target)


def yen_all_simple(pg: PointedGraph):
    """All simple s-t paths, shortest first."""
    return yen_simple_framework(pg, AnyLanguage(), _plain_solver)


def _downward_solver(g, start, target, lang, want_shortest):
    # for a downward-closed language the shortest match is already simple
    return shortest_match(g, start, target, lang.nfa, lang.states)


def yen_downward_closed(pg: PointedGraph, query, check: bool = True):
    """Simple paths matching a downward-closed query, in radix order."""
    if check and not is_downward_closed(query):
        raise PreconditionError("query language is not downward closed")
    return yen_simple_framework(pg, NfaLanguage.of(query), _downward_solver)


# ---- trails --------------------------------------------------------------


def merge_radix(streams):
    """k-way merge of radix-ordered streams of ``(key, item)``; ties by stream index."""
    heap = []
    iters = [iter(s) for s in streams]
    for idx, it in enumerate(iters):
        head = next(it, None)
        if head is not None:
            heap.append((head[0], idx, head[1]))
    heapq.heapify(heap)
    while heap:
        key, idx, item = heapq.heappop(heap)
        yield item
        head = next(iters[idx], None)
        if head is not None:
            heapq.heappush(heap, (head[0], idx, head[1]))


def enumerate_trails(pg: PointedGraph, query, inner=None):
    """Trails matching ``query`` in radix order, via the line-graph instances.

    ``inner(instance, query)`` must enumerate simple paths of the pointed
    graph ``instance`` in radix order; by default the downward-closed Yen
    enumerator is used, which requires a downward-closed query.
    """
    from .nfa import nullable_query
    from .transforms import trail_instances, trail_from_instance_path

    g, s, t = pg
    if inner is None:
        inner = yen_downward_closed
    if s == t and nullable_query(query):
        yield Path((), start=s)
    streams = []
    for inst in trail_instances(pg):
        def stream(inst=inst):
            for hp in inner(inst, query):
                trail = trail_from_instance_path(hp)
                yield trail.radix_key(), trail
        streams.append(stream())
    yield from merge_radix(streams)
