"""Product of a pointed graph with an NFA, and radix-order path enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Edge, Graph, Path, PointedGraph
from .nfa import Nfa, as_nfa, is_finite_language


@dataclass
class ProductGraph:
    """Nodes are pairs (graph node, NFA state)."""

    nodes: set
    edges: list
    start: set
    accept: set
    succ: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.nodes)


def _reverse_delta(nfa: Nfa) -> dict:
    return nfa.reversed().delta


def product(pg: PointedGraph, query, trim: bool = True, initial=None) -> ProductGraph:
    """Build ``(G, s, t) x N``; optionally trim to useful nodes."""
    nfa = as_nfa(query)
    g, s, t = pg
    init = nfa.initial if initial is None else frozenset(initial)
    start = {(s, q) for q in init}
    nodes, edges, succ = set(start), [], {}
    queue = deque(start)
    while queue:
        u, q = queue.popleft()
        row = nfa.delta.get(q, {})
        out = succ.setdefault((u, q), [])
        for e in g.out_edges(u):
            for q2 in sorted(row.get(e.label, ())):
                tgt = (e.dst, q2)
                edges.append(((u, q), e, tgt))
                out.append((e, tgt))
                if tgt not in nodes:
                    nodes.add(tgt)
                    queue.append(tgt)
    accept = {(t, q) for q in nfa.final if (t, q) in nodes}
    if trim:
        pred = {}
        for a, e, b in edges:
            pred.setdefault(b, []).append(a)
        live = set(accept)
        queue = deque(accept)
        while queue:
            x = queue.popleft()
            for y in pred.get(x, ()):
                if y not in live:
                    live.add(y)
                    queue.append(y)
        nodes &= live
        edges = [(a, e, b) for a, e, b in edges if a in live and b in live]
        succ = {x: [(e, y) for e, y in succ.get(x, ()) if y in live] for x in nodes}
        start &= live
    return ProductGraph(nodes, edges, start, accept, succ)


def edge_alphabet_nfa(prod: ProductGraph) -> Nfa:
    """Re-read every product edge as a transition on the graph-edge symbol."""
    order = sorted(prod.nodes, key=repr)
    index = {x: i for i, x in enumerate(order)}
    delta = {}
    for a, e, b in prod.edges:
        delta.setdefault(index[a], {}).setdefault(e, set()).add(index[b])
    frozen = {q: {e: frozenset(ts) for e, ts in row.items()} for q, row in delta.items()}
    return Nfa(
        len(order),
        frozen,
        frozenset(index[x] for x in prod.start),
        frozenset(index[x] for x in prod.accept),
    )


class _Layers:
    """``layer(m)``: states from which a final state is reachable in exactly m steps."""

    def __init__(self, nfa: Nfa):
        self.rev = _reverse_delta(nfa)
        self.levels = [frozenset(nfa.final)]

    def layer(self, m: int) -> frozenset:
        while len(self.levels) <= m:
            prev = self.levels[-1]
            nxt = set()
            for q in prev:
                for ts in self.rev.get(q, {}).values():
                    nxt |= ts
            self.levels.append(frozenset(nxt))
        return self.levels[m]


def _sorted_moves(nfa: Nfa, states, allowed) -> list:
    moves = {}
    for q in states:
        for sym, ts in nfa.delta.get(q, {}).items():
            hit = ts & allowed
            if hit:
                moves.setdefault(sym, set()).update(hit)
    return sorted((sym, frozenset(ts)) for sym, ts in moves.items())


def smallest_word_of_length(nfa: Nfa, length: int, _layers: _Layers | None = None):
    """Lexicographically smallest accepted word of exactly ``length`` symbols."""
    layers = _layers or _Layers(nfa)
    cur = nfa.initial & layers.layer(length)
    if not cur:
        return None
    word = []
    for remaining in range(length, 0, -1):
        sym, cur = _sorted_moves(nfa, cur, layers.layer(remaining - 1))[0]
        word.append(sym)
    return tuple(word)


def words_of_length(nfa: Nfa, length: int, _layers: _Layers | None = None):
    """All accepted words of one length, in lexicographic order.

    Every explored branch leads to an output, which bounds the delay.
    """
    layers = _layers or _Layers(nfa)
    cur = nfa.initial & layers.layer(length)
    if not cur:
        return
    if length == 0:
        yield ()
        return
    word = []
    stack = [iter(_sorted_moves(nfa, cur, layers.layer(length - 1)))]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if word:
                word.pop()
            continue
        sym, states = nxt
        word.append(sym)
        remaining = length - len(word)
        if remaining == 0:
            yield tuple(word)
            word.pop()
        else:
            stack.append(iter(_sorted_moves(nfa, states, layers.layer(remaining - 1))))


def max_word_length(nfa: Nfa):
    """Longest accepted word length for a finite language, else ``None``."""
    if not is_finite_language(nfa):
        return None
    useful = nfa.useful_states()
    best = {q: 0 for q in nfa.final if q in useful}
    # longest path in a DAG by repeated relaxation from the final states
    order = _topological(nfa, useful)
    for q in reversed(order):
        for sym, ts in nfa.delta.get(q, {}).items():
            for q2 in ts:
                if q2 in best:
                    best[q] = max(best.get(q, -1), best[q2] + 1)
    vals = [best[q] for q in nfa.initial if q in best]
    return max(vals) if vals else -1


def _topological(nfa: Nfa, useful) -> list:
    indeg = {q: 0 for q in useful}
    for q in useful:
        for ts in nfa.delta.get(q, {}).values():
            for q2 in ts:
                if q2 in useful:
                    indeg[q2] += 1
    queue = deque(q for q, d in indeg.items() if d == 0)
    order = []
    while queue:
        q = queue.popleft()
        order.append(q)
        for ts in nfa.delta.get(q, {}).values():
            for q2 in ts:
                if q2 in useful:
                    indeg[q2] -= 1
                    if indeg[q2] == 0:
                        queue.append(q2)
    return order


def enumerate_words(nfa: Nfa, max_length: int | None = None):
    """Accepted words in radix order; terminates iff the language is finite
    or ``max_length`` is given."""
    top = max_word_length(nfa)
    if max_length is not None:
        top = max_length if top is None else min(top, max_length)
    layers = _Layers(nfa)
    length = 0
    while top is None or length <= top:
        yield from words_of_length(nfa, length, layers)
        length += 1


def enumerate_paths(pg: PointedGraph, query, max_length: int | None = None):
    """Every s-t path matching the query, in radix order of edge sequences."""
    _, s, _ = pg
    nfa = edge_alphabet_nfa(product(pg, query))
    for word in enumerate_words(nfa, max_length):
        yield Path(word, start=s)


def enumerate_shortest_paths(pg: PointedGraph, query):
    """Only the minimum-length matches, in radix order."""
    _, s, _ = pg
    nfa = edge_alphabet_nfa(product(pg, query))
    layers = _Layers(nfa)
    useful = len(nfa.useful_states())
    for length in range(useful + 1):
        if nfa.initial & layers.layer(length):
            for word in words_of_length(nfa, length, layers):
                yield Path(word, start=s)
            return


def backward_distances(g: Graph, nfa: Nfa, target, forbidden_nodes=(), forbidden_edges=()) -> dict:
    """Distance from each product node (v, q) to an accepting node (target, f)."""
    banned = set(forbidden_nodes)
    bad = set(forbidden_edges)
    rev = _reverse_delta(nfa)
    if target in banned:
        return {}
    dist = {(target, q): 0 for q in nfa.final}
    queue = deque(dist)
    while queue:
        v, q2 = queue.popleft()
        d = dist[(v, q2)] + 1
        row = rev.get(q2, {})
        if not row:
            continue
        for e in g.in_edges(v):
            if e in bad:
                continue
            for q in row.get(e.label, ()):
                key = (e.src, q)
                if key not in dist:
                    dist[key] = d
                    if e.src not in banned:
                        queue.append(key)
    return dist


def shortest_match(
    g: Graph,
    start,
    target,
    query,
    initial=None,
    forbidden_nodes=(),
    forbidden_edges=(),
):
    """Radix-smallest among the shortest start-target paths whose word is
    accepted from ``initial`` (arbitrary semantics).  ``start`` itself is
    exempt from ``forbidden_nodes``."""
    nfa = as_nfa(query)
    init = nfa.initial if initial is None else frozenset(initial)
    banned = set(forbidden_nodes)
    banned.discard(start)
    if start not in g or target not in g:
        return None
    dist = backward_distances(g, nfa, target, banned, forbidden_edges)
    options = [dist[(start, q)] for q in init if (start, q) in dist]
    if not options:
        return None
    d = min(options)
    cur = frozenset(q for q in init if dist.get((start, q)) == d)
    bad = set(forbidden_edges)
    node, edges = start, []
    while d > 0:
        for e in g.out_edges(node):
            if e in bad or e.dst in banned:
                continue
            nxt = frozenset(
                q2
                for q in cur
                for q2 in nfa.delta.get(q, {}).get(e.label, ())
                if dist.get((e.dst, q2)) == d - 1
            )
            if nxt:
                edges.append(e)
                node, cur, d = e.dst, nxt, d - 1
                break
        else:  # pragma: no cover - distances guarantee progress
            raise AssertionError("broken distance labelling")
    return Path(edges, start=start)


def product_reachable(g: Graph, start, target, query, initial=None, forbidden_nodes=()) -> bool:
    """Is some start-target walk (arbitrary semantics) accepted?"""
    nfa = as_nfa(query)
    init = nfa.initial if initial is None else frozenset(initial)
    banned = set(forbidden_nodes)
    banned.discard(start)
    if target in banned:
        return False
    seen = {(start, q) for q in init}
    queue = deque(seen)
    while queue:
        v, q = queue.popleft()
        if v == target and q in nfa.final:
            return True
        row = nfa.delta.get(q)
        if not row:
            continue
        for e in g.out_edges(v):
            if e.dst in banned:
                continue
            for q2 in row.get(e.label, ()):
                key = (e.dst, q2)
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
    return False
