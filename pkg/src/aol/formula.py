"""Syntax of the modal language: formula terms, a recursive-descent parser and
a canonical printer.

Grammar (loosest to tightest)::

    formula := implish
    implish := prefish ( "->" implish )?
    prefish := orish ( ">" prefish )?
    orish   := andish ( "|" andish )*
    andish  := unary ( "&" unary )*
    unary   := "~" unary | "K" unary | "O" unary | "A" unary
             | atom | "true" | "false" | "(" formula ")"

``->`` and ``>`` associate to the right, ``&`` and ``|`` to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

__all__ = [
    "Formula",
    "Atom",
    "Top",
    "Bottom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Knows",
    "Only",
    "Abd",
    "PrefCond",
    "TRUE",
    "FALSE",
    "ParseError",
    "parse",
    "to_text",
    "is_abductive",
    "is_objective",
    "atoms_of",
    "depth",
    "size",
    "conjoin",
    "disjoin",
    "RESERVED",
]

RESERVED = frozenset({"K", "O", "A", "true", "false"})
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Formula:
    """Base class of formula terms. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    # operator sugar, handy in tests and scripts
    def __invert__(self) -> "Not":
        return Not(self)

    def __and__(self, other: "Formula") -> "And":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Or":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Implies":
        return Implies(self, other)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _IDENT.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"atom name {self.name!r} is a reserved word")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Knows(Formula):
    arg: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Only(Formula):
    arg: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Abd(Formula):
    arg: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class PrefCond(Formula):
    """Preferential conditional ``left > right``."""

    left: Formula
    right: Formula

    def __str__(self) -> str:
        return to_text(self)


TRUE = Top()
FALSE = Bottom()

_MODAL = (Knows, Only, Abd)
_BINARY = (And, Or, Implies, PrefCond)


# ---------------------------------------------------------------- structure


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Not, Knows, Only, Abd)):
        return (f.arg,)
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over all subformula occurrences."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def is_objective(f: Formula) -> bool:
    """True iff ``f`` contains no K, O, A or > constructor."""
    return not any(isinstance(g, (*_MODAL, PrefCond)) for g in subformulas(f))


def is_abductive(f: Formula) -> bool:
    """True iff ``f`` is ``A g`` with ``g`` boolean."""
    return isinstance(f, Abd) and is_objective(f.arg)


def depth(f: Formula) -> int:
    kids = children(f)
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def conjoin(fs: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; ``true`` for an empty iterable."""
    fs = list(fs)
    return reduce(And, fs) if fs else TRUE


def disjoin(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    return reduce(Or, fs) if fs else FALSE


# ------------------------------------------------------------------ printer

_P_IMPL, _P_PREF, _P_OR, _P_AND, _P_UNARY, _P_ATOM = range(1, 7)


def _fmt(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f.name, _P_ATOM
    if isinstance(f, Top):
        return "true", _P_ATOM
    if isinstance(f, Bottom):
        return "false", _P_ATOM
    if isinstance(f, Not):
        text, wrapped = _operand(f.arg, _P_UNARY)
        return "~" + text, _P_UNARY
    if isinstance(f, _MODAL):
        op = {Knows: "K", Only: "O", Abd: "A"}[type(f)]
        text, wrapped = _operand(f.arg, _P_UNARY)
        return (op + text if wrapped else f"{op} {text}"), _P_UNARY
    if isinstance(f, Implies):
        return _infix(f, " -> ", _P_IMPL, _P_IMPL + 1, _P_IMPL)
    if isinstance(f, PrefCond):
        return _infix(f, " > ", _P_PREF, _P_PREF + 1, _P_PREF)
    if isinstance(f, Or):
        return _infix(f, " | ", _P_OR, _P_OR, _P_OR + 1)
    if isinstance(f, And):
        return _infix(f, " & ", _P_AND, _P_AND, _P_AND + 1)
    raise TypeError(f"not a formula: {f!r}")


def _operand(f: Formula, need: int) -> tuple[str, bool]:
    text, prec = _fmt(f)
    if prec < need:
        return f"({text})", True
    return text, False


def _infix(f, op: str, prec: int, lneed: int, rneed: int) -> tuple[str, int]:
    left, _ = _operand(f.left, lneed)
    right, _ = _operand(f.right, rneed)
    return left + op + right, prec


def to_text(f: Formula) -> str:
    """Canonical text of ``f``; ``parse(to_text(f)) == f``."""
    return _fmt(f)[0]


# ------------------------------------------------------------------- parser


class ParseError(ValueError):
    """Syntax error carrying the 0-based offset and the expected tokens."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.message = message
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<sym>[()~&|>])|(?P<ident>[A-Za-z][A-Za-z0-9_]*))"
)
_UNARY_START = ("~", "K", "O", "A", "(", "true", "false", "<atom>")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            ch = text[pos]
            if ch == "-":
                raise ParseError("unknown operator '-'", pos, ["->"])
            raise ParseError(f"unexpected character {ch!r}", pos, _UNARY_START)
        kind = m.lastgroup
        tokens.append((m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("<end>", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        t = self.tok
        self.i += 1
        return t

    def formula(self) -> Formula:
        left = self.prefish()
        if self.tok == "->":
            self.advance()
            return Implies(left, self.formula())
        return left

    def prefish(self) -> Formula:
        left = self.orish()
        if self.tok == ">":
            self.advance()
            return PrefCond(left, self.prefish())
        return left

    def orish(self) -> Formula:
        f = self.andish()
        while self.tok == "|":
            self.advance()
            f = Or(f, self.andish())
        return f

    def andish(self) -> Formula:
        f = self.unary()
        while self.tok == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t, pos = self.tok, self.pos
        if t == "~":
            self.advance()
            return Not(self.unary())
        if t in ("K", "O", "A"):
            self.advance()
            arg = self.unary()
            return {"K": Knows, "O": Only, "A": Abd}[t](arg)
        if t == "true":
            self.advance()
            return TRUE
        if t == "false":
            self.advance()
            return FALSE
        if t == "(":
            self.advance()
            f = self.formula()
            if self.tok != ")":
                raise ParseError(f"unexpected {self._show()}", self.pos,
                                 [")", "->", ">", "|", "&"])
            self.advance()
            return f
        if _IDENT.match(t):
            self.advance()
            return Atom(t)
        raise ParseError(f"unexpected {self._show()}", pos, _UNARY_START)

    def _show(self) -> str:
        return "end of input" if self.tok == "<end>" else repr(self.tok)


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`ParseError` on bad input."""
    if not isinstance(text, str):
        raise TypeError("parse expects a string")
    p = _Parser(text)
    try:
        f = p.formula()
    except RecursionError:
        raise ParseError("formula nested too deeply", p.pos) from None
    if p.tok != "<end>":
        raise ParseError(f"unexpected {p._show()}", p.pos, ["->", ">", "|", "&", "<end>"])
    return f
