"""Single-path solvers for simple paths and trails."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .colorcoding import ColorCodingParams, color_coding_bounded_match
from .graph import Edge, Graph, Path, PointedGraph, concat, shortest_path
from .lang import alphabet
from .nfa import Nfa, as_nfa, to_nfa
from .product import backward_distances, product_reachable, shortest_match
from .repfam import rep_bounded_search, rep_paths_dp
from .ste import SteProfile, bordered_value, conflict_positions, cut_borders
from .transforms import trail_from_instance_path, trail_instances

DEFAULT_BUDGET = 4


class BudgetExceeded(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _better(best, cand):
    if cand is None:
        return best
    if best is None or cand.radix_key() < best.radix_key():
        return cand
    return best


def reverse_path(p: Path) -> Path:
    """Turn a path of the edge-reversed graph back into one of the original."""
    return Path([Edge(e.dst, e.label, e.src) for e in reversed(p.edges)], start=p.end)


@lru_cache(maxsize=4096)
def profile_nfa(profile: SteProfile) -> Nfa:
    return to_nfa(profile.to_ast())


# ---- unconstrained length problems ---------------------------------------------


def simple_path_at_most_k(pg: PointedGraph, k: int):
    """A shortest s-t path if it has at most ``k`` edges."""
    g, s, t = pg
    p = shortest_path(g, s, t)
    return p if p is not None and len(p) <= k else None


def flps_long_path(pg: PointedGraph, k: int, want_shortest: bool = False):
    """A simple s-t path with at least ``k`` edges, or ``None``.

    Families of (k+1)-node prefixes are kept representative for k+1 further
    nodes; each stored prefix is closed by a shortest tail that avoids it.
    """
    g, s, t = pg
    if s not in g or t not in g:
        return None
    if k <= 0:
        return shortest_path(g, s, t)
    if s == t or k >= len(g.nodes):
        return None
    best = None
    families = rep_paths_dp(g, s, k + 1)
    for v in sorted(families, key=repr):
        for node_set, wit in families[v].sets.items():
            tail = shortest_path(g, v, t, forbidden_nodes=node_set - {v})
            if tail is None:
                continue
            cand = concat(Path(wit, start=s), tail)
            if not want_shortest:
                return cand
            best = _better(best, cand)
    return best


# ---- a^k w? a* -----------------------------------------------------------------


def paths_matching_word(g: Graph, word, start=None) -> list:
    """All simple paths whose word is exactly ``word``."""
    word = tuple(word)
    out = []
    starts = [start] if start is not None else sorted(g.nodes, key=repr)
    for s in starts:
        stack = [(s, (), frozenset([s]))]
        while stack:
            v, edges, seen = stack.pop()
            if len(edges) == len(word):
                out.append(Path(edges, start=s))
                continue
            want = word[len(edges)]
            for e in reversed(g.out_edges(v)):
                if e.label == want and e.dst not in seen:
                    stack.append((e.dst, edges + (e,), seen | {e.dst}))
    return out


def akwa_solver(pg: PointedGraph, k: int, w, a="a", want_shortest: bool = False, budget: int = 2):
    """A simple s-t path matching ``a^k w? a*``."""
    w = tuple(w)
    if len(w) > budget:
        raise BudgetExceeded(f"|w| = {len(w)} exceeds the budget {budget}")
    g, s, t = pg
    if s not in g or t not in g:
        return None
    only_a = g.restrict_labels({a})
    best = flps_long_path(PointedGraph(only_a, s, t), k, want_shortest)
    if best is not None and not want_shortest:
        return best
    if not w:
        return best
    for pc in paths_matching_word(g, w):
        u0, uc = pc.start, pc.end
        pc_nodes = set(pc.nodes)
        sub = only_a.without(pc.nodes[1:-1])
        if s not in sub:
            continue
        fam = rep_paths_dp(sub, s, k + 1).get(u0)
        if fam is None:
            continue
        for node_set, wit in fam.sets.items():
            if node_set & pc_nodes != {u0}:
                continue
            tail = shortest_path(sub, uc, t, forbidden_nodes=node_set)
            if tail is None:
                continue
            cand = concat(concat(Path(wit, start=s), pc), tail)
            if not want_shortest:
                return cand
            best = _better(best, cand)
    return best


# ---- STE block solver -------------------------------------------------------------


def _bounded(g, s, t, nfa, max_length, opts):
    if opts.get("bounded", "repfam") == "color":
        params = opts.get("params") or ColorCodingParams()
        return color_coding_bounded_match(PointedGraph(g, s, t), nfa, max_length, params)
    return rep_bounded_search(g, s, t, nfa, max_length)


def _block_solve(g: Graph, s, t, p: SteProfile, want_shortest: bool, opts: dict):
    """Simple s-t path matching ``p``.

    Correct when ``p`` is 0-bordered, and also when every node of ``g`` has
    a single out-label and ``p`` has no conflict positions.
    """
    if s not in g or t not in g:
        return None
    if s == t:
        return Path((), start=s) if p.accepts_empty() else None
    nfa = profile_nfa(p)
    if not product_reachable(g, s, t, nfa):
        return None
    star = p.star_atom
    if not star:
        return _bounded(g, s, t, nfa, p.k_r, opts)
    if not p.prefix_mandatory and not p.suffix_mandatory:
        # downward closed: the shortest matching walk is simple
        return shortest_match(g, s, t, nfa)
    if not p.prefix_mandatory:
        found = _block_solve(g.reversed(), t, s, p.reversed(), want_shortest, opts)
        return None if found is None else reverse_path(found)
    k = p.k_r
    limit = 2 * k if p.suffix_mandatory else 2 * k + p.k2
    best = _bounded(g, s, t, nfa, limit, opts)
    if best is not None and not want_shortest:
        return best
    r1 = p.prefix_atoms + (star,) * p.k2
    rest = SteProfile((), True, star, p.suffix_atoms, p.suffix_optional)
    rest_nfa = profile_nfa(rest)
    families = rep_paths_dp(g, s, k + 1, constraint=r1)
    for v in sorted(families, key=repr):
        for node_set, wit in families[v].sets.items():
            sub = g.without(node_set - {v})
            if not product_reachable(sub, v, t, rest_nfa):
                continue
            if rest.suffix_mandatory:
                tail = _block_solve(sub, v, t, rest, want_shortest, opts)
            else:
                tail = shortest_match(sub, v, t, rest_nfa)
            if tail is None:
                continue
            cand = concat(Path(wit, start=s), tail)
            if not want_shortest:
                return cand
            best = _better(best, cand)
    return best


def zero_bordered_ste(pg: PointedGraph, p: SteProfile, want_shortest: bool = False, **opts):
    """Simple s-t path matching a 0-bordered STE."""
    if bordered_value(p) != 0:
        raise PreconditionError("profile is not 0-bordered")
    g, s, t = pg
    return _block_solve(g, s, t, p, want_shortest, opts)


def _prefix_paths(g: Graph, s, atoms) -> list:
    out = []
    stack = [(s, (), frozenset([s]))]
    while stack:
        v, edges, seen = stack.pop()
        if len(edges) == len(atoms):
            out.append(Path(edges, start=s))
            continue
        allowed = atoms[len(edges)]
        for e in g.out_edges(v):
            if e.label in allowed and e.dst not in seen:
                stack.append((e.dst, edges + (e,), seen | {e.dst}))
    return out


def cuttable_ste(pg: PointedGraph, p: SteProfile, budget: int = DEFAULT_BUDGET, want_shortest: bool = False, **opts):
    """Simple s-t path matching an STE whose bordered value is within budget.

    Prefixes up to the left cut border and suffixes from the right cut
    border are enumerated; the residual between them is 0-bordered.
    """
    br = cut_borders(p)
    if br.bordered_value > budget:
        raise BudgetExceeded(f"bordered value {br.bordered_value} exceeds the budget {budget}")
    g, s, t = pg
    if s not in g or t not in g:
        return None
    if br.bordered_value == 0:
        return _block_solve(g, s, t, p, want_shortest, opts)
    left, right = br.left_cut_border, br.right_cut_border
    residual = SteProfile(
        p.prefix_atoms[left:], p.prefix_optional, p.star_atom, p.suffix_atoms[right:], p.suffix_optional
    )
    prefixes = _prefix_paths(g, s, p.prefix_atoms[:left])
    suffixes = [reverse_path(q) for q in _prefix_paths(g.reversed(), t, p.suffix_atoms[:right])]
    best = None
    for p1 in prefixes:
        n1 = set(p1.nodes)
        for p2 in suffixes:
            u, v = p1.end, p2.start
            shared = n1 & set(p2.nodes)
            if shared and not (u == v and shared == {u}):
                continue
            banned = (n1 - {u}) | (set(p2.nodes) - {v})
            mid = _block_solve(g.without(banned), u, v, residual, want_shortest, opts)
            if mid is None:
                continue
            cand = concat(concat(p1, mid), p2)
            if not want_shortest:
                return cand
            best = _better(best, cand)
    return best


# ---- trails ------------------------------------------------------------------------


def _prime_maker(used):
    used = set(used)

    def prime(label):
        out = f"{label}′"
        while out in used:
            out += "′"
        return out

    return prime


def typed_ste_solve(h: Graph, start, target, p: SteProfile, conflict_budget: int, want_shortest: bool = False, **opts):
    """Simple path in a graph whose nodes each carry one out-label.

    Every conflict position may be realized by an A-labelled node; each
    choice of at most that many such nodes gets a private primed label, so
    the profile seen by the block solver is conflict free.
    """
    conf = set(conflict_positions(p))
    if len(conf) > conflict_budget:
        raise BudgetExceeded(f"{len(conf)} conflict positions exceed the budget {conflict_budget}")
    if not conf:
        return _block_solve(h, start, target, p, want_shortest, opts)
    star = p.star_atom
    prime = _prime_maker(set(h.labels) | alphabet(p.to_ast()))
    unprime = {prime(a): a for a in star}

    def relabel_atom(side, i, atom):
        if (side, i) not in conf:
            return atom
        return (atom - star) | {prime(a) for a in atom & star}

    primed = p.map_atoms(relabel_atom)
    candidates = sorted(
        (v for v in h.nodes if h.out_edges(v) and h.out_edges(v)[0].label in star),
        key=repr,
    )
    best = None
    for size in range(len(conf) + 1):
        for chosen in combinations(candidates, size):
            chosen = set(chosen)
            h2 = h.relabeled(lambda e: prime(e.label) if e.src in chosen else e.label)
            found = _block_solve(h2, start, target, primed, want_shortest, opts)
            if found is None:
                continue
            found = Path([Edge(e.src, unprime.get(e.label, e.label), e.dst) for e in found.edges], start=found.start)
            if not want_shortest:
                return found
            best = _better(best, found)
    return best


def trail_ste(pg: PointedGraph, p: SteProfile, conflict_budget: int = 2, want_shortest: bool = False, **opts):
    """A trail from s to t matching an STE with few conflict positions."""
    n_conf = len(conflict_positions(p))
    if n_conf > conflict_budget:
        raise BudgetExceeded(f"{n_conf} conflict positions exceed the budget {conflict_budget}")
    g, s, t = pg
    if s not in g or t not in g:
        return None
    if s == t and p.accepts_empty():
        return Path((), start=s)
    best = None
    for inst in trail_instances(pg):
        found = typed_ste_solve(inst.graph, inst.source, inst.target, p, conflict_budget, want_shortest, **opts)
        if found is None:
            continue
        trail = trail_from_instance_path(found)
        if not want_shortest:
            return trail
        best = _better(best, trail)
    return best


# ---- exhaustive fallback -------------------------------------------------------------


def exhaustive_simple(g: Graph, start, target, query, initial=None, trail: bool = False):
    """Radix-smallest simple path (or trail) whose word is accepted.

    Iterative deepening with product-distance pruning; exponential in the
    worst case, meant for languages outside the tractable classes.
    """
    nfa = as_nfa(query)
    init = frozenset(nfa.initial if initial is None else initial)
    if start not in g or target not in g:
        return None
    if start == target and init & nfa.final:
        return Path((), start=start)
    dist = backward_distances(g, nfa, target)
    lower = [dist[(start, q)] for q in init if (start, q) in dist]
    if not lower:
        return None
    limit = len(g.edges) if trail else len(g.nodes) - 1

    def need(v, states):
        return min((dist.get((v, q), limit + 1) for q in states), default=limit + 1)

    for length in range(min(lower), limit + 1):
        edges = []
        used_nodes = {start}
        used_edges = set()

        def go(v, states):
            remaining = length - len(edges)
            if remaining == 0:
                return v == target and bool(states & nfa.final)
            for e in g.out_edges(v):
                if trail:
                    if e in used_edges:
                        continue
                elif e.dst in used_nodes:
                    continue
                nxt = frozenset(q2 for q in states for q2 in nfa.delta.get(q, {}).get(e.label, ()))
                if not nxt or need(e.dst, nxt) > remaining - 1:
                    continue
                edges.append(e)
                used_edges.add(e)
                fresh = e.dst not in used_nodes
                used_nodes.add(e.dst)
                if go(e.dst, nxt):
                    return True
                edges.pop()
                used_edges.discard(e)
                if fresh:
                    used_nodes.discard(e.dst)
            return False

        if go(start, init):
            return Path(edges, start=start)
    return None


def exhaustive_trail(pg: PointedGraph, query):
    g, s, t = pg
    return exhaustive_simple(g, s, t, query, trail=True)
