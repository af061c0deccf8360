"""Position automata and language-level predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as iproduct

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
    desugar,
)


class StateCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Nfa:
    """An epsilon-free NFA over states ``0 .. n_states-1``.

    ``delta`` maps a state to a dict from symbol to a frozenset of states.
    """

    n_states: int
    delta: dict = field(hash=False, compare=False)
    initial: frozenset = frozenset()
    final: frozenset = frozenset()

    @property
    def states(self) -> range:
        return range(self.n_states)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(a for row in self.delta.values() for a in row)

    def transitions(self):
        for q, row in self.delta.items():
            for a, targets in row.items():
                for q2 in targets:
                    yield q, a, q2

    def step(self, states, symbol) -> frozenset:
        out = set()
        for q in states:
            out |= self.delta.get(q, {}).get(symbol, frozenset())
        return frozenset(out)

    def run(self, word, start=None) -> frozenset:
        cur = self.initial if start is None else frozenset(start)
        for a in word:
            if not cur:
                break
            cur = self.step(cur, a)
        return cur

    def accepts(self, word) -> bool:
        return bool(self.run(word) & self.final)

    def with_initial(self, states) -> "Nfa":
        return Nfa(self.n_states, self.delta, frozenset(states), self.final)

    def reversed(self) -> "Nfa":
        delta = {}
        for q, a, q2 in self.transitions():
            delta.setdefault(q2, {}).setdefault(a, set()).add(q)
        frozen = {q: {a: frozenset(t) for a, t in row.items()} for q, row in delta.items()}
        return Nfa(self.n_states, frozen, self.final, self.initial)

    def reachable(self, start=None) -> set:
        seen = set(self.initial if start is None else start)
        queue = deque(seen)
        while queue:
            q = queue.popleft()
            for targets in self.delta.get(q, {}).values():
                for q2 in targets:
                    if q2 not in seen:
                        seen.add(q2)
                        queue.append(q2)
        return seen

    def coreachable(self) -> set:
        return self.reversed().reachable()

    def useful_states(self) -> set:
        return self.reachable() & self.coreachable()


def to_nfa(expr) -> Nfa:
    """Position (Glushkov) automaton: state 0 is initial, one state per atom."""
    node = desugar(as_ast(expr))
    atoms = []

    def walk(n):
        # returns (nullable, first, last, follow-pairs)
        if isinstance(n, Empty):
            return False, set(), set(), set(), True
        if isinstance(n, Epsilon):
            return True, set(), set(), set(), False
        if isinstance(n, Atom):
            atoms.append(n.symbols)
            p = len(atoms)
            return False, {p}, {p}, set(), False
        if isinstance(n, Union):
            nul, first, last, follow, empty = False, set(), set(), set(), True
            for it in n.items:
                a, f, l_, fo, e = walk(it)
                if e:
                    continue
                empty = False
                nul |= a
                first |= f
                last |= l_
                follow |= fo
            return nul, first, last, follow, empty
        if isinstance(n, Concat):
            nul, first, last, follow = True, set(), set(), set()
            for it in n.items:
                a, f, l_, fo, e = walk(it)
                if e:
                    return False, set(), set(), set(), True
                follow |= fo
                follow |= {(x, y) for x in last for y in f}
                if nul:
                    first |= f
                last = (last | l_) if a else set(l_)
                nul = nul and a
            return nul, first, last, follow, False
        if isinstance(n, (Star, Plus, Opt)):
            a, f, l_, fo, e = walk(n.item)
            if e:
                return isinstance(n, (Star, Opt)), set(), set(), set(), not isinstance(n, (Star, Opt))
            if not isinstance(n, Opt):
                fo = fo | {(x, y) for x in l_ for y in f}
            nul = a or isinstance(n, (Star, Opt))
            return nul, f, l_, fo, False
        raise TypeError(f"unexpected node {n!r}")

    nul, first, last, follow, empty = walk(node)
    n_states = len(atoms) + 1
    delta = {}

    def add(q, p):
        row = delta.setdefault(q, {})
        for a in atoms[p - 1]:
            row.setdefault(a, set()).add(p)

    if not empty:
        for p in first:
            add(0, p)
        for x, y in follow:
            add(x, y)
    final = set() if empty else set(last)
    if nul and not empty:
        final.add(0)
    frozen = {q: {a: frozenset(t) for a, t in row.items()} for q, row in delta.items()}
    return Nfa(n_states, frozen, frozenset([0]), frozenset(final))


def as_nfa(query) -> Nfa:
    return query if isinstance(query, Nfa) else to_nfa(query)


def states_after(n: Nfa, word) -> frozenset:
    return n.run(tuple(word))


def derivative_nfa(n: Nfa, word) -> Nfa:
    """The automaton for the left quotient of L(n) by ``word``."""
    return n.with_initial(states_after(n, word))


def is_empty_language(query) -> bool:
    n = as_nfa(query)
    return not (n.reachable() & n.final)


def is_finite_language(query) -> bool:
    """True iff no cycle is both reachable and co-reachable."""
    n = as_nfa(query)
    useful = n.useful_states()
    succ = {
        q: {q2 for ts in n.delta.get(q, {}).values() for q2 in ts if q2 in useful}
        for q in useful
    }
    color = dict.fromkeys(useful, 0)
    for root in useful:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            for q2 in it:
                if color[q2] == 1:
                    return False
                if color[q2] == 0:
                    color[q2] = 1
                    stack.append((q2, iter(succ[q2])))
                    break
            else:
                color[q] = 2
                stack.pop()
    return True


def shortest_word_lengths(n: Nfa):
    """Yield (length, states-after) for lengths with at least one run."""
    cur = n.initial
    seen = set()
    length = 0
    while cur and cur not in seen:
        seen.add(cur)
        yield length, cur
        nxt = set()
        for q in cur:
            for ts in n.delta.get(q, {}).values():
                nxt |= ts
        cur = frozenset(nxt)
        length += 1


DOWNWARD_STATE_CAP = 1 << 16


def _subset_closure(n: Nfa, states, eps) -> frozenset:
    out = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for q2 in eps.get(q, ()):
            if q2 not in out:
                out.add(q2)
                stack.append(q2)
    return frozenset(out)


def is_downward_closed(query, state_cap: int = DOWNWARD_STATE_CAP) -> bool:
    """Check whether L equals its subsequence closure.

    The closure automaton gives every transition a parallel skip move.  The
    two automata are determinized on the fly and compared; the closure always
    contains L, so only the other inclusion needs checking.
    """
    n = as_nfa(query)
    eps = {}
    for q, _a, q2 in n.transitions():
        eps.setdefault(q, set()).add(q2)
    sigma = sorted(n.alphabet)
    start = (_subset_closure(n, n.initial, eps), n.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        closed, orig = queue.popleft()
        if (closed & n.final) and not (orig & n.final):
            return False
        for a in sigma:
            nc = _subset_closure(n, n.step(closed, a), eps)
            if not nc:
                continue
            pair = (nc, n.step(orig, a))
            if pair not in seen:
                if len(seen) >= state_cap:
                    raise StateCapExceeded(
                        f"downward-closure check exceeded {state_cap} states"
                    )
                seen.add(pair)
                queue.append(pair)
    return True


def structurally_downward_closed(query) -> bool:
    """Sufficient condition: built from atoms with ?, * and union only."""
    node = desugar(as_ast(query))

    def ok(n, guarded):
        if isinstance(n, (Empty, Epsilon)):
            return True
        if isinstance(n, Atom):
            return guarded
        if isinstance(n, (Opt, Star)):
            return ok(n.item, True)
        if isinstance(n, Union):
            return all(ok(i, guarded) for i in n.items)
        if isinstance(n, Concat):
            return all(ok(i, guarded) for i in n.items)
        return False

    return ok(node, False)


def words_up_to(alphabet, max_len):
    """All words over ``alphabet`` of length at most ``max_len``."""
    syms = sorted(alphabet)
    for length in range(max_len + 1):
        yield from iproduct(syms, repeat=length)


def nullable_query(query) -> bool:
    """Does the language contain the empty word?"""
    n = as_nfa(query)
    return bool(n.initial & n.final)
