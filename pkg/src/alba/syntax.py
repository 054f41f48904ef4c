"""Abstract syntax for the modal inequality language.

The base language is built from propositional variables, T, /\\, \\/, ->
and box.  The expanded language used internally by the reduction adds F,
nominals (i0, i1, ...) whose valuation is a singleton, conominals
(m0, m1, ...) whose valuation is the complement of a singleton, and the
backward diamond bdiam, which quantifies existentially along converse
accessibility and is the left adjoint of box.

Concrete syntax, tightest first: box/bdiam, /\\, \\/, -> (right
associative).  An inequality is `formula <= formula`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class ParseError(Exception):
    """Raised on malformed input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.message = message
        self.position = position


class Formula:
    """A node of the (expanded) modal language."""

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Nom(Formula):
    name: str


@dataclass(frozen=True)
class CoNom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True)
class BDiam(Formula):
    body: Formula


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Inequality:
    lhs: Formula
    rhs: Formula

    def __str__(self) -> str:
        return f"{show(self.lhs)} <= {show(self.rhs)}"


@dataclass(frozen=True)
class QuasiInequality:
    """A conjunction of inequalities entailing a conclusion inequality."""

    antecedents: tuple[Inequality, ...]
    conclusion: Inequality

    def __str__(self) -> str:
        if not self.antecedents:
            return f"=> {self.conclusion}"
        joined = " & ".join(str(iq) for iq in self.antecedents)
        return f"{joined} => {self.conclusion}"


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or, Imp)):
        return (f.left, f.right)
    if isinstance(f, (Box, BDiam)):
        return (f.body,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Yield every subformula of f, preorder."""
    yield f
    for child in children(f):
        yield from walk(child)


def prop_names(f: Formula) -> set[str]:
    return {g.name for g in walk(f) if isinstance(g, Prop)}


def nom_names(f: Formula) -> set[str]:
    return {g.name for g in walk(f) if isinstance(g, Nom)}


def conom_names(f: Formula) -> set[str]:
    return {g.name for g in walk(f) if isinstance(g, CoNom)}


def is_pure(f: Formula) -> bool:
    """True when f contains no propositional variable."""
    return not any(isinstance(g, Prop) for g in walk(f))


def is_base(f: Formula) -> bool:
    """True when f stays inside the base language."""
    return not any(isinstance(g, (Nom, CoNom, BDiam, Bot)) for g in walk(f))


def depth(f: Formula) -> int:
    kids = children(f)
    if not kids:
        return 0
    return 1 + max(depth(k) for k in kids)


def substitute(f: Formula, name: str, replacement: Formula) -> Formula:
    """Replace every occurrence of the variable `name` in f."""
    if isinstance(f, Prop):
        return replacement if f.name == name else f
    if isinstance(f, And):
        return And(substitute(f.left, name, replacement), substitute(f.right, name, replacement))
    if isinstance(f, Or):
        return Or(substitute(f.left, name, replacement), substitute(f.right, name, replacement))
    if isinstance(f, Imp):
        return Imp(substitute(f.left, name, replacement), substitute(f.right, name, replacement))
    if isinstance(f, Box):
        return Box(substitute(f.body, name, replacement))
    if isinstance(f, BDiam):
        return BDiam(substitute(f.body, name, replacement))
    return f


# Precedence levels used by both the printer and the parser grammar.
_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(f: Formula) -> int:
    if isinstance(f, Imp):
        return _PREC_IMP
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, (Box, BDiam)):
        return _PREC_UNARY
    return _PREC_ATOM


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, (Prop, Nom, CoNom)):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, And):
        s = f"{_show(f.left, _PREC_AND)} /\\ {_show(f.right, _PREC_AND + 1)}"
    elif isinstance(f, Or):
        s = f"{_show(f.left, _PREC_OR)} \\/ {_show(f.right, _PREC_OR + 1)}"
    elif isinstance(f, Imp):
        s = f"{_show(f.left, _PREC_IMP + 1)} -> {_show(f.right, _PREC_IMP)}"
    elif isinstance(f, (Box, BDiam)):
        word = "box" if isinstance(f, Box) else "bdiam"
        if _prec(f.body) >= _PREC_UNARY:
            return f"{word} {_show(f.body, _PREC_UNARY)}"
        return f"{word}({_show(f.body, _PREC_IMP)})"
    else:
        raise TypeError(f"not a formula: {f!r}")
    if _prec(f) < ctx:
        return f"({s})"
    return s


def show(f: Formula) -> str:
    """Print with minimal parentheses; parse(show(f)) == f."""
    return _show(f, _PREC_IMP)


_NOM_RE = re.compile(r"i[0-9]+\Z")
_CONOM_RE = re.compile(r"m[0-9]+\Z")
_TOKEN_RE = re.compile(r"->|/\\|\\/|<=|[()]|[a-z][a-z0-9]*|[TF]")
_KEYWORDS = ("box", "bdiam")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        lexeme = m.group()
        if lexeme in ("->", "/\\", "\\/", "<=", "(", ")", "T", "F") or lexeme in _KEYWORDS:
            kind = lexeme
        elif _NOM_RE.match(lexeme):
            kind = "nom"
        elif _CONOM_RE.match(lexeme):
            kind = "conom"
        else:
            kind = "prop"
        tokens.append(_Token(kind, lexeme, i))
        i = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            got = tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {got!r}", tok.pos)
        return self.advance()

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "->":
            self.advance()
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek().kind == "\\/":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "/\\":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "box":
            self.advance()
            return Box(self.unary())
        if tok.kind == "bdiam":
            self.advance()
            return BDiam(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.advance()
        if tok.kind == "T":
            return TOP
        if tok.kind == "F":
            return BOT
        if tok.kind == "prop":
            return Prop(tok.text)
        if tok.kind == "nom":
            return Nom(tok.text)
        if tok.kind == "conom":
            return CoNom(tok.text)
        if tok.kind == "(":
            f = self.formula()
            self.expect(")")
            return f
        got = tok.text or "end of input"
        raise ParseError(f"expected a formula, found {got!r}", tok.pos)

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    parser.finish()
    return f


def parse_inequality(text: str) -> Inequality:
    parser = _Parser(text)
    lhs = parser.formula()
    parser.expect("<=")
    rhs = parser.formula()
    parser.finish()
    return Inequality(lhs, rhs)


@dataclass
class SymbolPool:
    """Tracks used symbol names so fresh names never collide.

    Fresh nominals are i0, i1, ..., fresh conominals m0, m1, ..., fresh
    variables p0, p1, ...; in each kind the smallest unused index wins.
    """

    noms: set[str]
    conoms: set[str]
    props: set[str]

    @classmethod
    def empty(cls) -> "SymbolPool":
        return cls(set(), set(), set())

    @classmethod
    def for_inequality(cls, ineq: Inequality) -> "SymbolPool":
        pool = cls.empty()
        for side in (ineq.lhs, ineq.rhs):
            pool.noms |= nom_names(side)
            pool.conoms |= conom_names(side)
            pool.props |= prop_names(side)
        return pool

    @staticmethod
    def _fresh(used: set[str], prefix: str) -> str:
        k = 0
        while f"{prefix}{k}" in used:
            k += 1
        name = f"{prefix}{k}"
        used.add(name)
        return name

    def fresh_nom(self) -> str:
        return self._fresh(self.noms, "i")

    def fresh_conom(self) -> str:
        return self._fresh(self.conoms, "m")

    def fresh_prop(self) -> str:
        return self._fresh(self.props, "p")
