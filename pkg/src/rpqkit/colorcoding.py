"""Color coding for simple paths of bounded length.

The dynamic program stores, for every key (node[, automaton state]), one
Python integer whose bit ``m`` says that a colorful path with color set
``m`` reaches the key.  Adding color ``c`` to every mask that lacks it is a
mask-and-shift on that integer.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .graph import Graph, Path, PointedGraph
from .nfa import as_nfa, is_finite_language
from .product import max_word_length

EXHAUSTIVE_NODE_LIMIT = 12


@dataclass(frozen=True)
class ColorCodingParams:
    colors: int | None = None
    trials: int | None = None
    seed: int = 0
    failure_bound: float = 0.01
    mode: str = "auto"  # "random", "exhaustive" or "auto"

    def trial_count(self, colors: int) -> int:
        if self.trials is not None:
            return self.trials
        return max(1, math.ceil(math.exp(colors) * math.log(1 / self.failure_bound)))


def _lacks_masks(colors: int) -> list:
    """``out[c]`` has bit m set iff mask m does not contain color c."""
    out = []
    for c in range(colors):
        bits = 0
        for m in range(1 << colors):
            if not m >> c & 1:
                bits |= 1 << m
        out.append(bits)
    return out


def _colorful_layers(g: Graph, start, coloring: dict, colors: int, depth: int, step, initial, stop):
    """Layered DP; ``stop(layer_index, layer)`` ends the search early."""
    lacks = _lacks_masks(colors)
    layer = {(start, st): 1 << (1 << coloring[start]) for st in initial}
    layers = [layer]
    if stop(0, layer):
        return layers
    for i in range(depth):
        nxt = {}
        for (u, st), bits in layer.items():
            for e in g.out_edges(u):
                c = coloring[e.dst]
                moved = (bits & lacks[c]) << (1 << c)
                if not moved:
                    continue
                for st2 in step(st, e.label):
                    key = (e.dst, st2)
                    nxt[key] = nxt.get(key, 0) | moved
        layers.append(nxt)
        if stop(i + 1, nxt) or not nxt:
            break
        layer = nxt
    return layers


def _backtrack(g: Graph, layers, coloring, key, mask_bit, step_back) -> Path:
    """Rebuild edges from the last layer's ``key`` with color set ``mask_bit``."""
    edges = []
    v, st = key
    m = mask_bit
    for i in range(len(layers) - 1, 0, -1):
        prev_m = m - (1 << coloring[v])
        for e in g.in_edges(v):
            found = False
            for st0 in step_back(st, e.label, layers[i - 1], e.src):
                if layers[i - 1].get((e.src, st0), 0) >> prev_m & 1:
                    edges.append(e)
                    v, st, m = e.src, st0, prev_m
                    found = True
                    break
            if found:
                break
        else:  # pragma: no cover - layers guarantee a predecessor
            raise AssertionError("color coding backtrack failed")
    edges.reverse()
    return Path(edges, start=v)


def _colorings(nodes, colors: int, params: ColorCodingParams):
    nodes = sorted(nodes, key=repr)
    mode = params.mode
    if mode == "auto":
        mode = "exhaustive" if len(nodes) <= EXHAUSTIVE_NODE_LIMIT else "random"
    if mode == "exhaustive":
        yield len(nodes), {v: i for i, v in enumerate(nodes)}
        return
    if mode != "random":
        raise ValueError(f"unknown color coding mode {params.mode!r}")
    rng = random.Random(params.seed)
    for _ in range(params.trial_count(colors)):
        yield colors, {v: rng.randrange(colors) for v in nodes}


def _search(g: Graph, s, t, depth: int, params, step, step_back, initial, accepting, exact: bool):
    colors = params.colors or depth + 1
    for ncolors, coloring in _colorings(g.nodes, colors, params):
        hit = {}

        def stop(i, layer):
            if exact and i != depth:
                return False
            for (v, st), bits in layer.items():
                if v == t and accepting(st) and bits:
                    hit["key"] = (v, st)
                    hit["bits"] = bits
                    return True
            return False

        layers = _colorful_layers(g, s, coloring, ncolors, depth, step, initial, stop)
        if hit:
            bits = hit["bits"]
            mask = (bits & -bits).bit_length() - 1
            return _backtrack(g, layers, coloring, hit["key"], mask, step_back)
    return None


def color_coding_exact_k(pg: PointedGraph, k: int, params: ColorCodingParams = ColorCodingParams()):
    """A simple s-t path with exactly ``k`` edges, found with probability at
    least 1 - failure_bound when one exists."""
    g, s, t = pg
    if k < 0:
        return None
    if k == 0:
        return Path((), start=s) if s == t else None
    if k >= len(g.nodes):
        return None

    def step(st, label):
        yield None

    def step_back(st, label, layer, src):
        yield None

    return _search(g, s, t, k, params, step, step_back, (None,), lambda st: True, exact=True)


def color_coding_bounded_match(
    pg: PointedGraph,
    query,
    max_length: int | None = None,
    params: ColorCodingParams = ColorCodingParams(),
    initial=None,
):
    """A simple s-t path of length at most ``max_length`` whose word the
    automaton accepts, with the same probabilistic contract.

    Without ``max_length`` the language must be finite and its longest word
    sets the bound.
    """
    g, s, t = pg
    nfa = as_nfa(query)
    if max_length is None:
        if not is_finite_language(nfa):
            raise ValueError("language is infinite; pass max_length")
        max_length = max(max_word_length(nfa), 0)
    init = nfa.initial if initial is None else frozenset(initial)
    if s == t:
        return Path((), start=s) if init & nfa.final else None
    depth = min(max_length, len(g.nodes) - 1)
    rev = nfa.reversed().delta

    def step(q, label):
        return nfa.delta.get(q, {}).get(label, ())

    def step_back(q, label, layer, src):
        return sorted(rev.get(q, {}).get(label, ()))

    return _search(g, s, t, depth, params, step, step_back, sorted(init), lambda q: q in nfa.final, exact=False)
