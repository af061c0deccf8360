"""Enumeration with parameterized single-path solvers plugged into Yen."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import PointedGraph
from .lang import as_ast
from .solvers import (
    DEFAULT_BUDGET,
    _better,
    akwa_solver,
    cuttable_ste,
    flps_long_path,
    paths_matching_word,
    typed_ste_solve,
)
from .graph import Path, concat, shortest_path
from .ste import SteProfile, recognize_ste, ste_derivative
from .yen import enumerate_trails, yen_simple_framework


@dataclass(frozen=True)
class LongPath:
    """Simple paths with at least ``k`` edges."""

    k: int

    def derive(self, word) -> "LongPath":
        return LongPath(max(self.k - len(tuple(word)), 0))


@dataclass(frozen=True)
class Akwa:
    """The language ``a^k w? a*`` as a set of positions.

    ``("A", j)``: j leading a's read; ``("W", m)``: m symbols of w read;
    ``("S",)``: inside the trailing star.
    """

    k: int
    w: tuple
    a: str = "a"
    states: frozenset = frozenset({("A", 0)})

    def _step(self, state, x):
        kind = state[0]
        if kind == "A":
            j = state[1]
            if j < self.k:
                return {("A", j + 1)} if x == self.a else set()
            out = set()
            if x == self.a:
                out.add(("S",))
            if self.w and x == self.w[0]:
                out.add(("W", 1) if len(self.w) > 1 else ("S",))
            return out
        if kind == "W":
            m = state[1]
            if x != self.w[m]:
                return set()
            return {("W", m + 1)} if m + 1 < len(self.w) else {("S",)}
        return {("S",)} if x == self.a else set()

    def derive(self, word) -> "Akwa":
        cur = set(self.states)
        for x in word:
            cur = {n for st in cur for n in self._step(st, x)}
        return Akwa(self.k, self.w, self.a, frozenset(cur))


@dataclass(frozen=True)
class SteUnion:
    """A finite union of STE profiles, closed under left quotients."""

    profiles: tuple

    def derive(self, word) -> "SteUnion":
        out = []
        for p in self.profiles:
            for d in ste_derivative(p, word):
                if d not in out:
                    out.append(d)
        return SteUnion(tuple(out))


# ---- solvers adapted to the framework signature --------------------------------


def _long_path_solver(g, start, target, lang, want_shortest):
    return flps_long_path(PointedGraph(g, start, target), lang.k, want_shortest)


def _akwa_solver(budget):
    def solve(g, start, target, lang, want_shortest):
        best = None
        only_a = g.restrict_labels({lang.a})
        for state in sorted(lang.states):
            if state[0] == "A":
                found = akwa_solver(
                    PointedGraph(g, start, target), lang.k - state[1], lang.w, lang.a, want_shortest, budget
                )
            elif state[0] == "S":
                found = shortest_path(only_a, start, target)
            else:
                found = None
                for pc in paths_matching_word(g, lang.w[state[1] :], start=start):
                    tail = shortest_path(only_a.without(pc.nodes[:-1]), pc.end, target)
                    if tail is not None:
                        found = _better(found, concat(pc, tail))
                        if not want_shortest:
                            break
            best = _better(best, found)
            if best is not None and not want_shortest:
                return best
        return best

    return solve


def _ste_solver(budget, opts):
    def solve(g, start, target, lang, want_shortest):
        best = None
        for p in lang.profiles:
            found = cuttable_ste(PointedGraph(g, start, target), p, budget, want_shortest, **opts)
            best = _better(best, found)
            if best is not None and not want_shortest:
                return best
        return best

    return solve


def _typed_solver(conflict_budget, opts):
    def solve(h, start, target, lang, want_shortest):
        best = None
        for p in lang.profiles:
            found = typed_ste_solve(h, start, target, p, conflict_budget, want_shortest, **opts)
            best = _better(best, found)
            if best is not None and not want_shortest:
                return best
        return best

    return solve


def _as_spec(spec):
    if isinstance(spec, (LongPath, Akwa, SteProfile)):
        return spec
    prof = recognize_ste(spec)
    if not prof:
        raise ValueError(f"not a simple transitive expression: {prof.reason}")
    return prof


def enumerate_fpt(
    pg: PointedGraph,
    spec,
    semantics: str = "simple",
    order: str = "shortest",
    budget: int = DEFAULT_BUDGET,
    conflict_budget: int = 2,
    akwa_budget: int = 2,
    **opts,
):
    """FPT-delay enumeration for long paths, ``a^k w? a*`` and STEs.

    ``order="shortest"`` emits by nondecreasing length; ``"arrival"`` emits
    candidates in the order they were found.
    """
    spec = _as_spec(spec)
    if semantics == "simple":
        if isinstance(spec, LongPath):
            return yen_simple_framework(pg, spec, _long_path_solver, order)
        if isinstance(spec, Akwa):
            return yen_simple_framework(pg, spec, _akwa_solver(akwa_budget), order)
        return yen_simple_framework(pg, SteUnion((spec,)), _ste_solver(budget, opts), order)
    if semantics != "trail":
        raise ValueError(f"unsupported semantics {semantics!r}")
    if isinstance(spec, LongPath):
        labels = frozenset(pg.graph.labels)
        if not labels:
            if spec.k:
                return iter(())
            spec = SteProfile()
        else:
            spec = SteProfile((labels,) * spec.k, False, labels)
    if not isinstance(spec, SteProfile):
        raise ValueError("trail enumeration supports STE and long-path specs")
    solver = _typed_solver(conflict_budget, opts)

    def inner(inst, _query):
        return yen_simple_framework(inst, SteUnion((spec,)), solver, order)

    return enumerate_trails(pg, spec.to_ast(), inner)
