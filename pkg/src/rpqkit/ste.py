"""Recognition and analysis of simple transitive expressions (STEs).

An STE has the shape ``B_pre A* B_suff`` where each bounded part is either a
concatenation of atoms ``A_1 ... A_k`` or of optional atoms
``A_1? ... A_k?``.  A missing star is modelled by an empty star atom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
)
from .nfa import is_downward_closed, is_empty_language, StateCapExceeded

ONE, OPT, STAR = "1", "?", "*"


class EmptyLanguageError(ValueError):
    pass


@dataclass(frozen=True)
class NotSte:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class SteProfile:
    """Normalized STE.

    ``suffix_atoms[j - 1]`` is the atom ``A'_j``, counted from the right end,
    so ``suffix_atoms[0]`` is the last atom of the expression.
    """

    prefix_atoms: tuple = ()
    prefix_optional: bool = False
    star_atom: frozenset = frozenset()
    suffix_atoms: tuple = ()
    suffix_optional: bool = False

    def __post_init__(self):
        object.__setattr__(self, "prefix_atoms", tuple(frozenset(a) for a in self.prefix_atoms))
        object.__setattr__(self, "suffix_atoms", tuple(frozenset(a) for a in self.suffix_atoms))
        object.__setattr__(self, "star_atom", frozenset(self.star_atom))
        # an empty bounded part is treated as optional so that the two
        # spellings of the same language compare equal
        if not self.prefix_atoms:
            object.__setattr__(self, "prefix_optional", True)
        if not self.suffix_atoms:
            object.__setattr__(self, "suffix_optional", True)

    @property
    def k1(self) -> int:
        return len(self.prefix_atoms)

    @property
    def k2(self) -> int:
        return len(self.suffix_atoms)

    @property
    def k_r(self) -> int:
        return self.k1 + self.k2

    @property
    def has_star(self) -> bool:
        return bool(self.star_atom)

    @property
    def prefix_mandatory(self) -> bool:
        return bool(self.prefix_atoms) and not self.prefix_optional

    @property
    def suffix_mandatory(self) -> bool:
        return bool(self.suffix_atoms) and not self.suffix_optional

    def suffix_in_order(self) -> tuple:
        """Suffix atoms in reading order (left to right)."""
        return tuple(reversed(self.suffix_atoms))

    def factors(self) -> list:
        pk = OPT if self.prefix_optional else ONE
        sk = OPT if self.suffix_optional else ONE
        out = [(pk, a) for a in self.prefix_atoms]
        if self.star_atom:
            out.append((STAR, self.star_atom))
        out += [(sk, a) for a in self.suffix_in_order()]
        return out

    def to_ast(self):
        parts = []
        for kind, a in self.factors():
            at = Atom(a)
            parts.append(at if kind == ONE else Opt(at) if kind == OPT else Star(at))
        return concat(*parts)

    def accepts_empty(self) -> bool:
        return not self.prefix_mandatory and not self.suffix_mandatory

    def reversed(self) -> "SteProfile":
        """Profile of the reversed language."""
        return SteProfile(
            prefix_atoms=self.suffix_atoms,
            prefix_optional=self.suffix_optional,
            star_atom=self.star_atom,
            suffix_atoms=self.prefix_atoms,
            suffix_optional=self.prefix_optional,
        )

    def map_atoms(self, fn) -> "SteProfile":
        """Rewrite bounded atoms with ``fn(side, index, atom)``; 1-based index."""
        return SteProfile(
            prefix_atoms=[fn("left", i, a) for i, a in enumerate(self.prefix_atoms, 1)],
            prefix_optional=self.prefix_optional,
            star_atom=self.star_atom,
            suffix_atoms=[fn("right", j, a) for j, a in enumerate(self.suffix_atoms, 1)],
            suffix_optional=self.suffix_optional,
        )

    def accepts(self, word) -> bool:
        return any(True for _ in _runs(self.factors(), tuple(word)))

    def __str__(self):
        return str(self.to_ast())


@dataclass(frozen=True)
class BorderReport:
    left_cut_border: int
    right_cut_border: int
    conflict_positions: tuple = field(default=())

    @property
    def bordered_value(self) -> int:
        return max(self.left_cut_border, self.right_cut_border)


def _runs(factors, word):
    """Yield once if ``word`` matches the factor list (tiny backtracker)."""
    n = len(factors)
    seen = set()
    stack = [(0, 0)]
    while stack:
        i, j = stack.pop()
        if (i, j) in seen:
            continue
        seen.add((i, j))
        if i == n:
            if j == len(word):
                yield True
                return
            continue
        kind, a = factors[i]
        if kind != ONE:
            stack.append((i + 1, j))
        if j < len(word) and word[j] in a:
            stack.append((i + 1, j + 1))
            if kind == STAR:
                stack.append((i, j + 1))


# ---- recognition -------------------------------------------------------


class _Reject(Exception):
    pass


def _factor_list(node) -> list:
    if isinstance(node, Epsilon):
        return []
    if isinstance(node, Atom):
        return [(ONE, node.symbols)]
    if isinstance(node, Concat):
        out = []
        for it in node.items:
            out += _factor_list(it)
        return out
    if isinstance(node, Union):
        non_eps = [i for i in node.items if not isinstance(i, Epsilon)]
        if len(non_eps) == 1:
            return _factor_list(Opt(non_eps[0]))
        raise _Reject("union of non-atomic expressions")
    if isinstance(node, (Opt, Star, Plus)):
        inner = _factor_list(node.item)
        if not inner:
            return []
        symbols = frozenset().union(*(a for _, a in inner))
        if len(inner) == 1:
            kind, a = inner[0]
            if isinstance(node, Opt):
                return [(STAR if kind == STAR else OPT, a)]
            if isinstance(node, Star) or kind != ONE:
                return [(STAR, a)]
            return [(ONE, a), (STAR, a)]
        if all(kind != ONE for kind, _ in inner):
            # a nullable block: (x? y*)? stays itself, (x? y*)* is (x+y)*
            return inner if isinstance(node, Opt) else [(STAR, symbols)]
        raise _Reject(f"operator applied to the non-atomic expression {node.item}")
    if isinstance(node, Empty):
        raise _Reject("empty language")
    raise _Reject(f"unsupported node {node!r}")


def _merge_stars(factors: list) -> list:
    out = list(factors)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            (k1, a1), (k2, a2) = out[i], out[i + 1]
            if a1 != a2 or STAR not in (k1, k2):
                continue
            if k1 == STAR and k2 == ONE:
                out[i], out[i + 1] = out[i + 1], out[i]
            elif ONE not in (k1, k2):
                out[i : i + 2] = [(STAR, a1)]
            else:
                continue
            changed = True
            break
    return out


def _homogeneous(block) -> bool:
    return len({k for k, _ in block}) <= 1


def profile_from_factors(factors: list):
    """Build a profile from a factor list, or return ``NotSte``."""
    factors = _merge_stars(factors)
    stars = [i for i, (k, _) in enumerate(factors) if k == STAR]
    if len(stars) > 1:
        return NotSte("more than one starred atom")
    if stars:
        i = stars[0]
        pre, star, suf = factors[:i], factors[i][1], factors[i + 1 :]
    else:
        cut = 0
        while cut < len(factors) and factors[cut][0] == (factors[0][0] if factors else ONE):
            cut += 1
        pre, star, suf = factors[:cut], frozenset(), factors[cut:]
    if not _homogeneous(pre):
        return NotSte("prefix mixes mandatory and optional atoms")
    if not _homogeneous(suf):
        return NotSte("suffix mixes mandatory and optional atoms")
    return SteProfile(
        prefix_atoms=[a for _, a in pre],
        prefix_optional=bool(pre) and pre[0][0] == OPT,
        star_atom=star,
        suffix_atoms=[a for _, a in reversed(suf)],
        suffix_optional=bool(suf) and suf[0][0] == OPT,
    )


def recognize_ste(expr):
    """Return a normalized :class:`SteProfile` or :class:`NotSte`."""
    node = desugar(as_ast(expr))
    if is_empty_language(node):
        raise EmptyLanguageError("expression denotes the empty language")
    try:
        factors = _factor_list(node)
    except _Reject as exc:
        return NotSte(str(exc))
    return profile_from_factors(factors)


# ---- borders and conflicts ---------------------------------------------


def _border(atoms, optional, star) -> int:
    if optional:
        return 0
    for i in range(len(atoms), 0, -1):
        if not star <= atoms[i - 1]:
            return i
    return 0


def cut_borders(p: SteProfile) -> BorderReport:
    if not isinstance(p, SteProfile):
        raise ValueError(f"not a simple transitive expression: {getattr(p, 'reason', p)}")
    left = _border(p.prefix_atoms, p.prefix_optional, p.star_atom)
    right = _border(p.suffix_atoms, p.suffix_optional, p.star_atom)
    conflicts = tuple(
        [("left", i) for i in range(1, left + 1) if p.prefix_atoms[i - 1] & p.star_atom]
        + [("right", j) for j in range(1, right + 1) if p.suffix_atoms[j - 1] & p.star_atom]
    )
    return BorderReport(left, right, conflicts)


def conflict_positions(p: SteProfile) -> list:
    return list(cut_borders(p).conflict_positions)


def bordered_value(p: SteProfile) -> int:
    return cut_borders(p).bordered_value


# ---- derivatives -------------------------------------------------------


def ste_derivative(p: SteProfile, word) -> list:
    """Left quotient of L(p) by ``word`` as a list of STE profiles.

    A residual that ends inside the star keeps the starred atom, so the
    union covers every continuation.
    """
    factors = p.factors()
    n = len(factors)

    def advance(states, x):
        out = set()
        for j in states:
            if j > 0 and factors[j - 1][0] == STAR and x in factors[j - 1][1]:
                out.add(j)
            m = j + 1
            while m <= n:
                kind, a = factors[m - 1]
                if x in a:
                    out.add(m)
                if kind == ONE:
                    break
                m += 1
        return out

    states = {0}
    for x in word:
        states = advance(states, x)
        if not states:
            return []
    residuals = []
    for j in sorted(states):
        rest = factors[j - 1 :] if j > 0 and factors[j - 1][0] == STAR else factors[j:]
        prof = profile_from_factors(rest)
        if prof and prof not in residuals:
            residuals.append(prof)
    return residuals


# ---- reporting ---------------------------------------------------------


def classify(expr, budget: int = 4) -> dict:
    """Summary used by the ``classify`` command."""
    node = desugar(as_ast(expr))
    report = {"expression": str(node)}
    try:
        report["downward_closed"] = is_downward_closed(node)
    except StateCapExceeded:
        report["downward_closed"] = None
    try:
        prof = recognize_ste(node)
    except EmptyLanguageError:
        report.update(ste=False, reason="empty language")
        report["simple"] = report["trail"] = "trivial (no answers)"
        return report
    if not prof:
        report.update(ste=False, reason=prof.reason)
    else:
        br = cut_borders(prof)
        report.update(
            ste=True,
            k1=prof.k1,
            k2=prof.k2,
            k_r=prof.k_r,
            star_atom=sorted(prof.star_atom),
            cut_borders=[br.left_cut_border, br.right_cut_border],
            bordered_value=br.bordered_value,
            conflict_positions=[list(c) for c in br.conflict_positions],
        )
    if report["downward_closed"]:
        simple = trail = "downward-closed Yen enumeration (polynomial delay)"
    elif prof:
        if br.bordered_value == 0:
            simple = "zero-bordered STE solver (FPT in k_r)"
        elif br.bordered_value <= budget:
            simple = f"cuttable STE solver, bordered value {br.bordered_value} (FPT in k_r)"
        else:
            simple = "exhaustive search (bordered value above budget)"
        if len(br.conflict_positions) <= budget:
            trail = f"trail STE solver, {len(br.conflict_positions)} conflict position(s) (FPT in k_r)"
        else:
            trail = "exhaustive search (too many conflict positions)"
    else:
        simple = trail = "exhaustive search (not an STE)"
    report["simple"] = simple
    report["trail"] = trail
    return report
