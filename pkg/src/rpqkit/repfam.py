"""Representative families of path node sets.

A family ``F`` of p-sets is q-represented by a subfamily ``F'`` when every
set ``Y`` with ``|Y| <= q`` that misses some member of ``F`` also misses
some member of ``F'``.  The reduction below follows the uniform-matroid
construction: each p-set is mapped to the vector of its p x p minors in a
(p+q) x n Vandermonde matrix, and a basis of those vectors is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .graph import Graph, Path

PRIME = 2**31 - 1


@dataclass
class RepPathFamily:
    """Node sets of one size, each with edges of a path realizing it.

    ``sets`` maps a frozenset of nodes to the witness edge tuple, which runs
    from ``anchor[0]`` to ``anchor[1]`` through exactly those nodes.
    """

    set_size: int
    sets: dict = field(default_factory=dict)
    anchor: tuple = (None, None)
    constraint: tuple | None = None

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def witness(self, node_set) -> Path:
        return Path(self.sets[node_set], start=self.anchor[0])


# ---- linear algebra mod a prime ----------------------------------------------


def _pow_mod(base: np.ndarray, exp: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % PRIME
    while exp:
        if exp & 1:
            result = result * b % PRIME
        b = b * b % PRIME
        exp >>= 1
    return result


def _det_mod(mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square matrices over GF(PRIME)."""
    a = mats.astype(np.int64) % PRIME
    batch, p, _ = a.shape
    det = np.ones(batch, dtype=np.int64)
    idx = np.arange(batch)
    for c in range(p):
        nz = a[:, c:, c] != 0
        piv = c + nz.argmax(axis=1)
        det[~nz.any(axis=1)] = 0
        row_c = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = row_c
        flipped = piv != c
        det[flipped] = (PRIME - det[flipped]) % PRIME
        pivots = a[idx, c, c]
        det = det * pivots % PRIME
        if c + 1 < p:
            inv = _pow_mod(pivots, PRIME - 2)
            factors = a[:, c + 1 :, c] * inv[:, None] % PRIME
            a[:, c + 1 :, :] = (a[:, c + 1 :, :] - factors[:, :, None] * a[:, None, c, :] % PRIME) % PRIME
    return det


def _pivot_columns_mod(matrix: np.ndarray) -> list:
    """Indices of columns that are independent of all earlier columns."""
    m = matrix.astype(np.int64) % PRIME
    rows, cols = m.shape
    chosen = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), PRIME - 2, PRIME)
        m[r] = m[r] * inv % PRIME
        col = m[:, c].copy()
        col[r] = 0
        m = (m - col[:, None] * m[r][None, :] % PRIME) % PRIME
        chosen.append(c)
        r += 1
    return chosen


def _pivot_columns_exact(matrix: list) -> list:
    """Same as ``_pivot_columns_mod`` over the rationals."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    chosen = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pr = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        chosen.append(c)
        r += 1
    return chosen


def _det_exact(m: list) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


# ---- reduction -------------------------------------------------------------------


def _point_map(sets) -> dict:
    universe = sorted({x for s in sets for x in s}, key=repr)
    return {x: i + 1 for i, x in enumerate(universe)}


def _minor_vectors_mod(sets: list, p: int, q: int) -> np.ndarray:
    points = _point_map(sets)
    rows = p + q
    row_sets = list(combinations(range(rows), p))
    # columns of the Vandermonde matrix, one per chosen set element
    xs = np.array([[points[x] for x in sorted(s, key=repr)] for s in sets], dtype=np.int64)
    powers = np.stack([_pow_mod(xs, e) for e in range(rows)], axis=1)  # (m, rows, p)
    sel = np.array(row_sets, dtype=np.int64)  # (r, p)
    subs = powers[:, sel, :]  # (m, r, p, p)
    m, r = subs.shape[0], subs.shape[1]
    return _det_mod(subs.reshape(m * r, p, p)).reshape(m, r)


def _minor_vectors_exact(sets: list, p: int, q: int) -> list:
    points = _point_map(sets)
    rows = p + q
    row_sets = list(combinations(range(rows), p))
    out = []
    for s in sets:
        xs = [points[x] for x in sorted(s, key=repr)]
        out.append([_det_exact([[x**e for x in xs] for e in rs]) for rs in row_sets])
    return out


def rep_reduce(fam: RepPathFamily, q: int, field: str = "modp", identity: bool = False) -> RepPathFamily:
    """A q-representative subfamily of size at most C(p+q, p).

    ``field`` is ``"modp"`` (numpy arithmetic modulo a 31-bit prime) or
    ``"rational"`` (exact, slow).  ``identity=True`` skips the reduction.
    """
    p = fam.set_size
    bound = comb(p + q, p)
    if identity or len(fam) <= bound or p == 0:
        return fam
    sets = list(fam.sets)
    if q == 0:
        keep = [sets[0]]
    elif field == "modp":
        vectors = _minor_vectors_mod(sets, p, q)
        keep = [sets[i] for i in _pivot_columns_mod(vectors.T)]
    elif field == "rational":
        vectors = _minor_vectors_exact(sets, p, q)
        keep = [sets[i] for i in _pivot_columns_exact([list(col) for col in zip(*vectors)])]
    else:
        raise ValueError(f"unknown field {field!r}")
    return RepPathFamily(p, {s: fam.sets[s] for s in keep}, fam.anchor, fam.constraint)


def is_representative(full, part, q: int, universe=None) -> bool:
    """Exhaustive check of the representativity implication."""
    full = [frozenset(s) for s in full]
    part = [frozenset(s) for s in part]
    if universe is None:
        universe = set().union(*full) if full else set()
    universe = sorted(universe, key=repr)
    for size in range(q + 1):
        for ys in combinations(universe, size):
            y = set(ys)
            if any(not (s & y) for s in full) and not any(not (s & y) for s in part):
                return False
    return True


# ---- dynamic programs --------------------------------------------------------------


def rep_layers(g: Graph, start, set_size: int, q_final: int, step, initial=(None,), reduce_kwargs=None):
    """Row-by-row family construction over keys (node, state).

    ``step(state, label, row)`` yields successor states for an edge taken
    from row ``row`` (1-based set size before the edge).  Yields
    ``(row, families)`` for rows 1 .. ``set_size``, where ``families`` maps
    (node, state) to a :class:`RepPathFamily` that is
    (set_size + q_final - row)-representative.
    """
    reduce_kwargs = reduce_kwargs or {}
    row = {(start, st): RepPathFamily(1, {frozenset([start]): ()}, (start, start)) for st in initial}
    yield 1, row
    for i in range(1, set_size):
        q_next = set_size + q_final - (i + 1)
        nxt = {}
        for (u, st), fam in row.items():
            for e in g.out_edges(u):
                for st2 in step(st, e.label, i):
                    bucket = nxt.setdefault((e.dst, st2), {})
                    for x, wit in fam.sets.items():
                        if e.dst in x:
                            continue
                        key = x | {e.dst}
                        if key not in bucket:
                            bucket[key] = wit + (e,)
        row = {
            key: rep_reduce(RepPathFamily(i + 1, bucket, (start, key[0])), q_next, **reduce_kwargs)
            for key, bucket in nxt.items()
            if bucket
        }
        yield i + 1, row
        if not row:
            return


def rep_paths_dp(g: Graph, s, k: int, constraint=None, q_final: int | None = None, **reduce_kwargs) -> dict:
    """Families of k-node path sets from ``s``, keyed by end node.

    ``constraint`` is an optional sequence of k-1 label sets; edge i of the
    witness must carry a label from ``constraint[i-1]``.
    """
    if k < 1:
        raise ValueError("set size must be at least 1")
    if constraint is not None and len(constraint) != k - 1:
        raise ValueError("constraint must have one atom per edge")
    q_final = k if q_final is None else q_final

    def step(st, label, i):
        if constraint is None or label in constraint[i - 1]:
            yield None

    last = {}
    for row_index, row in rep_layers(g, s, k, q_final, step, reduce_kwargs=reduce_kwargs):
        last = row if row_index == k else {}
    out = {}
    for (v, _), fam in last.items():
        fam.constraint = None if constraint is None else tuple(constraint)
        out[v] = fam
    return out


def rep_bounded_search(g: Graph, s, t, nfa, max_length: int, initial=None, **reduce_kwargs):
    """Deterministic search for a simple s-t path of length at most
    ``max_length`` whose word the NFA accepts; the shortest length wins."""
    init = nfa.initial if initial is None else frozenset(initial)
    if s == t:
        return Path((), start=s) if init & nfa.final else None

    def step(q, label, i):
        return nfa.delta.get(q, {}).get(label, ())

    for row_index, row in rep_layers(g, s, max_length + 1, 0, step, initial=sorted(init), reduce_kwargs=reduce_kwargs):
        hits = [fam for (v, q), fam in row.items() if v == t and q in nfa.final]
        if hits:
            best = min((Path(w, start=s) for fam in hits for w in fam.sets.values()), key=Path.radix_key)
            return best
    return None
