"""Query routing: pick an algorithm per semantics and expression class."""

from __future__ import annotations

from .graph import Path, PointedGraph
from .lang import as_ast, desugar
from .nfa import StateCapExceeded, as_nfa, is_downward_closed, is_empty_language, structurally_downward_closed
from .product import enumerate_paths, enumerate_shortest_paths, shortest_match
from .solvers import (
    DEFAULT_BUDGET,
    cuttable_ste,
    exhaustive_simple,
    exhaustive_trail,
    trail_ste,
)
from .ste import EmptyLanguageError, cut_borders, recognize_ste
from .yen import NfaLanguage, enumerate_trails, yen_downward_closed, yen_simple_framework

SEMANTICS = ("arbitrary", "shortest", "simple", "trail")


def _downward(node) -> bool:
    try:
        return is_downward_closed(node)
    except StateCapExceeded:
        return structurally_downward_closed(node)


def plan(query, semantics: str, budget: int = DEFAULT_BUDGET, conflict_budget: int = 2) -> str:
    """Name of the route taken for ``query`` under ``semantics``."""
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    node = desugar(as_ast(query))
    if semantics in ("arbitrary", "shortest"):
        return "product"
    if is_empty_language(node):
        return "empty"
    if _downward(node):
        return "downward-closed"
    try:
        prof = recognize_ste(node)
    except EmptyLanguageError:
        return "empty"
    if prof:
        br = cut_borders(prof)
        if semantics == "simple" and br.bordered_value <= budget:
            return "ste"
        if semantics == "trail" and len(br.conflict_positions) <= conflict_budget:
            return "ste"
    return "exhaustive"


def evaluate(pg: PointedGraph, query, semantics: str = "simple", budget: int = DEFAULT_BUDGET, conflict_budget: int = 2, **opts):
    """One matching path under ``semantics`` (a shortest one where cheap), or ``None``."""
    route = plan(query, semantics, budget, conflict_budget)
    g, s, t = pg
    node = desugar(as_ast(query))
    if route == "empty" or s not in g or t not in g:
        return None
    if route == "product" or route == "downward-closed":
        return shortest_match(g, s, t, as_nfa(node))
    if route == "ste":
        prof = recognize_ste(node)
        if semantics == "simple":
            return cuttable_ste(pg, prof, budget, **opts)
        return trail_ste(pg, prof, conflict_budget, **opts)
    if semantics == "simple":
        return exhaustive_simple(g, s, t, node)
    return exhaustive_trail(pg, node)


def _exhaustive_solver(trail: bool):
    def solve(g, start, target, lang, want_shortest):
        return exhaustive_simple(g, start, target, lang.nfa, lang.states, trail=trail)

    return solve


def enumerate_answers(
    pg: PointedGraph,
    query,
    semantics: str = "simple",
    order: str | None = None,
    max_length: int | None = None,
    budget: int = DEFAULT_BUDGET,
    conflict_budget: int = 2,
    **opts,
):
    """Stream of answer paths.

    Arbitrary, shortest and downward-closed streams are in radix order, as
    is the exhaustive fallback; STE streams are shortest-first unless
    ``order="arrival"``.
    """
    from .fptenum import enumerate_fpt

    route = plan(query, semantics, budget, conflict_budget)
    g, s, t = pg
    node = desugar(as_ast(query))
    if s not in g or t not in g or route == "empty":
        return iter(())
    if semantics == "arbitrary":
        return enumerate_paths(pg, node, max_length)
    if semantics == "shortest":
        return enumerate_shortest_paths(pg, node)
    if route == "downward-closed":
        if semantics == "simple":
            return yen_downward_closed(pg, node, check=False)
        return enumerate_trails(pg, node, lambda inst, q: yen_downward_closed(inst, q, check=False))
    if route == "ste":
        return enumerate_fpt(
            pg, recognize_ste(node), semantics, order or "shortest", budget, conflict_budget, **opts
        )
    lang = NfaLanguage.of(node)
    if semantics == "simple":
        return yen_simple_framework(pg, lang, _exhaustive_solver(False), order or "radix")
    return enumerate_trails(
        pg, node, lambda inst, q: yen_simple_framework(inst, NfaLanguage.of(q), _exhaustive_solver(False), order or "radix")
    )
