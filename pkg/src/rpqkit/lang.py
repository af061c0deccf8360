"""Query expressions: syntax tree, parser and structural helpers.

Concrete syntax
---------------
* symbols: a letter followed by digits (``a``, ``a1``, ``b12``) or any
  text in angle brackets (``<knows>``); adjacent symbols concatenate
* ``+`` or ``|`` between operands is union; ``+`` directly before the end
  of input, ``)``, ``|`` or another postfix operator is one-or-more
* postfix ``?``, ``*``, ``+``, ``{n}`` (exactly n) and ``{,n}`` (at most n)
* ``()`` or ``ε`` is the empty word, ``∅`` the empty language
"""

from __future__ import annotations

from dataclasses import dataclass

class QuerySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnsupportedConstructError(QuerySyntaxError):
    pass


@dataclass(frozen=True)
class Empty:
    def __str__(self):
        return "∅"


@dataclass(frozen=True)
class Epsilon:
    def __str__(self):
        return "ε"


@dataclass(frozen=True)
class Atom:
    symbols: frozenset

    def __str__(self):
        syms = sorted(self.symbols)
        if len(syms) == 1:
            return _show_symbol(syms[0])
        return "(" + "+".join(_show_symbol(s) for s in syms) + ")"


@dataclass(frozen=True)
class Concat:
    items: tuple

    def __str__(self):
        return "".join(_wrap(i, Union) for i in self.items)


@dataclass(frozen=True)
class Union:
    items: tuple

    def __str__(self):
        return "+".join(str(i) for i in self.items)


@dataclass(frozen=True)
class Opt:
    item: object

    def __str__(self):
        return _wrap(self.item, (Union, Concat)) + "?"


@dataclass(frozen=True)
class Star:
    item: object

    def __str__(self):
        return _wrap(self.item, (Union, Concat)) + "*"


@dataclass(frozen=True)
class Plus:
    item: object

    def __str__(self):
        return _wrap(self.item, (Union, Concat)) + "+"


@dataclass(frozen=True)
class Repeat:
    item: object
    count: int

    def __str__(self):
        return _wrap(self.item, (Union, Concat)) + "{%d}" % self.count


@dataclass(frozen=True)
class UpTo:
    item: object
    count: int

    def __str__(self):
        return _wrap(self.item, (Union, Concat)) + "{,%d}" % self.count


def _show_symbol(s) -> str:
    s = str(s)
    if len(s) >= 1 and s[0].isalpha() and (len(s) == 1 or s[1:].isdigit()):
        return s
    return f"<{s}>"


def _wrap(node, kinds) -> str:
    text = str(node)
    return f"({text})" if isinstance(node, kinds) else text


# ---- smart constructors ------------------------------------------------


def atom(*symbols):
    syms = frozenset(symbols)
    return Atom(syms) if syms else Empty()


def concat(*items):
    flat = []
    for it in items:
        if isinstance(it, Empty):
            return Empty()
        if isinstance(it, Epsilon):
            continue
        if isinstance(it, Concat):
            flat.extend(it.items)
        else:
            flat.append(it)
    if not flat:
        return Epsilon()
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def union(*items):
    """Union that merges plain atoms into one atom and drops ∅."""
    symbols = set()
    has_atom = False
    rest = []
    for it in items:
        parts = it.items if isinstance(it, Union) else (it,)
        for p in parts:
            if isinstance(p, Empty):
                continue
            if isinstance(p, Atom):
                symbols |= p.symbols
                has_atom = True
            elif p not in rest:
                rest.append(p)
    flat = ([Atom(frozenset(symbols))] if has_atom else []) + rest
    if not flat:
        return Empty()
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def expand_repeat(item, count: int):
    return concat(*([item] * count))


def expand_upto(item, count: int):
    return concat(*([Opt(item)] * count))


def desugar(node):
    """Expand Repeat and UpTo into concatenations, recursively."""
    if isinstance(node, (Empty, Epsilon, Atom)):
        return node
    if isinstance(node, Concat):
        return concat(*(desugar(i) for i in node.items))
    if isinstance(node, Union):
        return union(*(desugar(i) for i in node.items))
    if isinstance(node, Repeat):
        return expand_repeat(desugar(node.item), node.count)
    if isinstance(node, UpTo):
        return expand_upto(desugar(node.item), node.count)
    return type(node)(desugar(node.item))


def size(node) -> int:
    """Number of symbol occurrences; an atom counts each of its symbols."""
    node = desugar(node)
    if isinstance(node, Atom):
        return len(node.symbols)
    if isinstance(node, (Empty, Epsilon)):
        return 0
    if isinstance(node, (Concat, Union)):
        return sum(size(i) for i in node.items)
    return size(node.item)


def alphabet(node) -> frozenset:
    if isinstance(node, Atom):
        return node.symbols
    if isinstance(node, (Empty, Epsilon)):
        return frozenset()
    if isinstance(node, (Concat, Union)):
        return frozenset().union(*(alphabet(i) for i in node.items))
    return alphabet(node.item)


def nullable(node) -> bool:
    if isinstance(node, (Epsilon, Opt, Star, UpTo)):
        return True
    if isinstance(node, (Empty, Atom)):
        return False
    if isinstance(node, Concat):
        return all(nullable(i) for i in node.items)
    if isinstance(node, Union):
        return any(nullable(i) for i in node.items)
    if isinstance(node, Repeat):
        return node.count == 0 or nullable(node.item)
    return nullable(node.item)


# ---- parser ------------------------------------------------------------

_POSTFIX_FOLLOWERS = set(")?*+{|")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        return QuerySyntaxError(msg, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def plus_is_postfix(self) -> bool:
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return j >= len(self.text) or self.text[j] in _POSTFIX_FOLLOWERS

    def parse(self):
        node = self.parse_union()
        if self.peek():
            ch = self.peek()
            if ch == ")":
                raise self.error("unbalanced ')'")
            raise self.error(f"unexpected {ch!r}")
        return node

    def parse_union(self):
        items = [self.parse_concat()]
        while True:
            ch = self.peek()
            if ch == "|" or (ch == "+" and not self.plus_is_postfix()):
                self.pos += 1
                items.append(self.parse_concat())
            else:
                break
        return union(*items) if len(items) > 1 else items[0]

    def parse_concat(self):
        items = []
        while True:
            ch = self.peek()
            if not ch or ch in "|)" or (ch == "+" and not self.plus_is_postfix()):
                break
            if ch in "?*+{":
                raise self.error(f"operator {ch!r} has no operand")
            items.append(self.parse_postfix())
        if not items:
            raise self.error("expected an expression")
        return concat(*items)

    def parse_postfix(self):
        node = self.parse_primary()
        while True:
            ch = self.peek()
            if ch == "?":
                self.pos += 1
                node = Opt(node)
            elif ch == "*":
                self.pos += 1
                node = Star(node)
            elif ch == "+" and self.plus_is_postfix():
                self.pos += 1
                node = Plus(node)
            elif ch == "{":
                node = self.parse_count(node)
            else:
                return node

    def parse_count(self, node):
        start = self.pos
        close = self.text.find("}", self.pos)
        if close < 0:
            raise self.error("unterminated '{'", start)
        body = self.text[self.pos + 1 : close].strip()
        self.pos = close + 1
        upto = body.startswith(",")
        digits = body[1:].strip() if upto else body
        if not digits.isdigit():
            raise self.error(f"bad repetition count {body!r}", start)
        n = int(digits)
        return expand_upto(node, n) if upto else expand_repeat(node, n)

    def parse_primary(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return Epsilon()
            node = self.parse_union()
            if self.peek() != ")":
                raise self.error("expected ')'", start)
            self.pos += 1
            return node
        if ch == "ε":
            self.pos += 1
            return Epsilon()
        if ch == "∅":
            self.pos += 1
            return Empty()
        if ch == "<":
            close = self.text.find(">", self.pos)
            if close < 0 or close == self.pos + 1:
                raise self.error("bad bracketed symbol", start)
            name = self.text[self.pos + 1 : close]
            self.pos = close + 1
            return Atom(frozenset([name]))
        if ch.isalpha():
            j = self.pos + 1
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            name = self.text[self.pos : j]
            self.pos = j
            return Atom(frozenset([name]))
        if ch in "!^~":
            raise UnsupportedConstructError(f"unsupported construct {ch!r}", start)
        if not ch:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {ch!r}")


def parse(text: str):
    """Parse query text into a syntax tree (Repeat/UpTo already expanded)."""
    return _Parser(text).parse()


def as_ast(query):
    return parse(query) if isinstance(query, str) else query
