"""First-order frame conditions: translation, simplification, printing.

A pure modal formula (no propositional variables) is translated at a
point into first-order logic over one binary relation R: nominals become
equations with a named world, conominals become disequations, box
quantifies over R-successors and bdiam looks back along R.  A
quasi-inequality becomes one sentence whose named worlds are promoted to
universally quantified variables.

The simplifier keeps the sentence extensionally equivalent while
shrinking it: truth-constant units, negation pushing, one-point
elimination of quantifiers pinned by an equation, and elimination of
universally quantified names forced equal by the matrix.  It is
deterministic, so simplified output is stable across runs.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .syntax import (
    And,
    BDiam,
    Bot,
    Box,
    CoNom,
    Formula,
    Imp,
    Inequality,
    Nom,
    Or,
    Prop,
    QuasiInequality,
    Top,
)


class NonPureInput(ValueError):
    """Raised when a formula still carrying variables is translated."""


@dataclass(frozen=True)
class Term:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var(Term):
    pass


@dataclass(frozen=True)
class Const(Term):
    pass


class FOFormula:
    def __str__(self) -> str:
        return fo_show(self)


@dataclass(frozen=True)
class FOTrue(FOFormula):
    pass


@dataclass(frozen=True)
class FOFalse(FOFormula):
    pass


@dataclass(frozen=True)
class Rel(FOFormula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq(FOFormula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq(FOFormula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(FOFormula):
    body: FOFormula


@dataclass(frozen=True)
class FOAnd(FOFormula):
    left: FOFormula
    right: FOFormula


@dataclass(frozen=True)
class FOOr(FOFormula):
    left: FOFormula
    right: FOFormula


@dataclass(frozen=True)
class FOImp(FOFormula):
    left: FOFormula
    right: FOFormula


@dataclass(frozen=True)
class Forall(FOFormula):
    var: str
    body: FOFormula


@dataclass(frozen=True)
class Exists(FOFormula):
    var: str
    body: FOFormula


FO_TRUE = FOTrue()
FO_FALSE = FOFalse()


@dataclass(frozen=True)
class FOSentence:
    """A universal prefix over named worlds plus a matrix."""

    variables: tuple[str, ...]
    matrix: FOFormula

    def __str__(self) -> str:
        if not self.variables:
            return fo_show(self.matrix)
        prefix = "".join(f"A {v}. " for v in self.variables)
        return prefix + _quantifier_body(self.matrix)


# ---------------------------------------------------------------------------
# Printing.

_P_QUANT, _P_IMP, _P_OR, _P_AND, _P_EQ, _P_NOT, _P_ATOM = 0, 1, 2, 3, 4, 5, 6


def _quantifier_body(f: FOFormula) -> str:
    if isinstance(f, (Forall, Exists, Rel, Eq, Neq, FOTrue, FOFalse, Not)):
        return _fo(f, _P_QUANT)
    return f"({_fo(f, _P_QUANT)})"


def _fo(f: FOFormula, ctx: int) -> str:
    if isinstance(f, FOTrue):
        return "true"
    if isinstance(f, FOFalse):
        return "false"
    if isinstance(f, Rel):
        return f"R({f.left},{f.right})"
    if isinstance(f, Eq):
        s, prec = f"{f.left} = {f.right}", _P_EQ
    elif isinstance(f, Neq):
        s, prec = f"{f.left} != {f.right}", _P_EQ
    elif isinstance(f, Not):
        s, prec = f"~{_fo(f.body, _P_NOT)}", _P_NOT
    elif isinstance(f, FOAnd):
        s, prec = f"{_fo(f.left, _P_AND)} & {_fo(f.right, _P_AND + 1)}", _P_AND
    elif isinstance(f, FOOr):
        s, prec = f"{_fo(f.left, _P_OR)} | {_fo(f.right, _P_OR + 1)}", _P_OR
    elif isinstance(f, FOImp):
        s, prec = f"{_fo(f.left, _P_IMP + 1)} -> {_fo(f.right, _P_IMP)}", _P_IMP
    elif isinstance(f, Forall):
        s, prec = f"A {f.var}. {_quantifier_body(f.body)}", _P_QUANT
    elif isinstance(f, Exists):
        s, prec = f"E {f.var}. {_quantifier_body(f.body)}", _P_QUANT
    else:
        raise TypeError(f"not a first-order formula: {f!r}")
    if prec < ctx:
        return f"({s})"
    return s


def fo_show(f: FOFormula) -> str:
    return _fo(f, _P_QUANT)


# ---------------------------------------------------------------------------
# Structure helpers.


def fo_free_vars(f: FOFormula) -> set[str]:
    if isinstance(f, (Rel, Eq, Neq)):
        return {t.name for t in (f.left, f.right) if isinstance(t, Var)}
    if isinstance(f, Not):
        return fo_free_vars(f.body)
    if isinstance(f, (FOAnd, FOOr, FOImp)):
        return fo_free_vars(f.left) | fo_free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return fo_free_vars(f.body) - {f.var}
    return set()


def fo_const_names(f: FOFormula) -> set[str]:
    if isinstance(f, (Rel, Eq, Neq)):
        return {t.name for t in (f.left, f.right) if isinstance(t, Const)}
    if isinstance(f, Not):
        return fo_const_names(f.body)
    if isinstance(f, (FOAnd, FOOr, FOImp)):
        return fo_const_names(f.left) | fo_const_names(f.right)
    if isinstance(f, (Forall, Exists)):
        return fo_const_names(f.body)
    return set()


def _map_terms(f: FOFormula, fn: Callable[[Term], Term]) -> FOFormula:
    if isinstance(f, Rel):
        return Rel(fn(f.left), fn(f.right))
    if isinstance(f, Eq):
        return Eq(fn(f.left), fn(f.right))
    if isinstance(f, Neq):
        return Neq(fn(f.left), fn(f.right))
    if isinstance(f, Not):
        return Not(_map_terms(f.body, fn))
    if isinstance(f, FOAnd):
        return FOAnd(_map_terms(f.left, fn), _map_terms(f.right, fn))
    if isinstance(f, FOOr):
        return FOOr(_map_terms(f.left, fn), _map_terms(f.right, fn))
    if isinstance(f, FOImp):
        return FOImp(_map_terms(f.left, fn), _map_terms(f.right, fn))
    if isinstance(f, Forall):
        return Forall(f.var, _map_terms(f.body, fn))
    if isinstance(f, Exists):
        return Exists(f.var, _map_terms(f.body, fn))
    return f


def fo_subst(f: FOFormula, name: str, term: Term) -> FOFormula:
    """Replace the free variable `name` by `term` (no capture checks:
    bound names and substituted names are drawn from disjoint supplies)."""
    if isinstance(f, (Forall, Exists)) and f.var == name:
        return f
    if isinstance(f, Forall):
        return Forall(f.var, fo_subst(f.body, name, term))
    if isinstance(f, Exists):
        return Exists(f.var, fo_subst(f.body, name, term))
    if isinstance(f, Not):
        return Not(fo_subst(f.body, name, term))
    if isinstance(f, FOAnd):
        return FOAnd(fo_subst(f.left, name, term), fo_subst(f.right, name, term))
    if isinstance(f, FOOr):
        return FOOr(fo_subst(f.left, name, term), fo_subst(f.right, name, term))
    if isinstance(f, FOImp):
        return FOImp(fo_subst(f.left, name, term), fo_subst(f.right, name, term))
    if isinstance(f, (Rel, Eq, Neq)):
        return _map_terms(f, lambda t: term if t == Var(name) else t)
    return f


def _conjuncts(f: FOFormula) -> list[FOFormula]:
    if isinstance(f, FOAnd):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _conj(fs: Sequence[FOFormula]) -> FOFormula:
    if not fs:
        return FO_TRUE
    out = fs[0]
    for g in fs[1:]:
        out = FOAnd(out, g)
    return out


def _split_imp(f: FOFormula) -> tuple[list[FOFormula], FOFormula]:
    if isinstance(f, FOImp):
        return _conjuncts(f.left), f.right
    return [], f


def _make_imp(ants: Sequence[FOFormula], cons: FOFormula) -> FOFormula:
    if not ants:
        return cons
    return FOImp(_conj(ants), cons)


# ---------------------------------------------------------------------------
# Standard translation.


def _name_supply(prefix: str) -> Callable[[], str]:
    counter = itertools.count()
    return lambda: f"{prefix}{next(counter)}"


def _st(f: Formula, point: Term, fresh: Callable[[], str]) -> FOFormula:
    if isinstance(f, Prop):
        raise NonPureInput(f"variable {f.name} has no first-order translation")
    if isinstance(f, Nom):
        return Eq(point, Const(f.name))
    if isinstance(f, CoNom):
        return Neq(point, Const(f.name))
    if isinstance(f, Top):
        return FO_TRUE
    if isinstance(f, Bot):
        return FO_FALSE
    if isinstance(f, And):
        return FOAnd(_st(f.left, point, fresh), _st(f.right, point, fresh))
    if isinstance(f, Or):
        return FOOr(_st(f.left, point, fresh), _st(f.right, point, fresh))
    if isinstance(f, Imp):
        return FOImp(_st(f.left, point, fresh), _st(f.right, point, fresh))
    if isinstance(f, Box):
        y = fresh()
        return Forall(y, FOImp(Rel(point, Var(y)), _st(f.body, Var(y), fresh)))
    if isinstance(f, BDiam):
        y = fresh()
        return Exists(y, FOAnd(Rel(Var(y), point), _st(f.body, Var(y), fresh)))
    raise TypeError(f"not a formula: {f!r}")


def st_formula(f: Formula, point: str = "x0") -> FOFormula:
    """Translate a pure formula; the result has `point` free."""
    return _st(f, Var(point), _name_supply("y"))


def st_inequality(
    ineq: Inequality, point: str = "x0", fresh: Callable[[], str] | None = None
) -> FOFormula:
    """Translate `lhs <= rhs` as truth of lhs implying truth of rhs everywhere."""
    if fresh is None:
        fresh = _name_supply("y")
    return Forall(
        point,
        FOImp(_st(ineq.lhs, Var(point), fresh), _st(ineq.rhs, Var(point), fresh)),
    )


def st_quasi(quasi: QuasiInequality) -> FOSentence:
    """Translate a quasi-inequality into one closed sentence.

    Each inequality gets its own evaluation point x0, x1, ...; modal
    depth is unfolded with y0, y1, ... shared across the whole sentence,
    so no bound name is reused.  The world names carried by nominals and
    conominals are then promoted to universally quantified variables,
    sorted by kind and index.
    """
    fresh = _name_supply("y")
    parts = [
        st_inequality(iq, f"x{k}", fresh) for k, iq in enumerate(quasi.antecedents)
    ]
    conclusion = st_inequality(quasi.conclusion, f"x{len(parts)}", fresh)
    matrix = FOImp(_conj(parts), conclusion) if parts else conclusion
    names = sorted(fo_const_names(matrix), key=_symbol_key)
    matrix = _map_terms(matrix, lambda t: Var(t.name) if isinstance(t, Const) else t)
    return FOSentence(tuple(names), matrix)


def _symbol_key(name: str) -> tuple[str, int]:
    m = re.fullmatch(r"([a-z]+)([0-9]+)", name)
    if m:
        return (m.group(1), int(m.group(2)))
    return (name, -1)


def conjoin(sentences: Sequence[FOSentence]) -> FOSentence:
    """One sentence equivalent to the conjunction of all of them."""
    if not sentences:
        return FOSentence((), FO_TRUE)
    if len(sentences) == 1:
        return sentences[0]

    def close(s: FOSentence) -> FOFormula:
        matrix = s.matrix
        for v in reversed(s.variables):
            matrix = Forall(v, matrix)
        return matrix

    return FOSentence((), _conj([close(s) for s in sentences]))


# ---------------------------------------------------------------------------
# Simplification.


def _term_is(t: Term, name: str) -> bool:
    return isinstance(t, Var) and t.name == name


def _eq_pin(f: FOFormula, name: str) -> Term | None:
    """The term a bound variable is equated with, when there is one."""
    if not isinstance(f, Eq):
        return None
    if _term_is(f.left, name) and not _term_is(f.right, name):
        return f.right
    if _term_is(f.right, name) and not _term_is(f.left, name):
        return f.left
    return None


def _neq_pin(f: FOFormula, name: str) -> Term | None:
    if not isinstance(f, Neq):
        return None
    if _term_is(f.left, name) and not _term_is(f.right, name):
        return f.right
    if _term_is(f.right, name) and not _term_is(f.left, name):
        return f.left
    return None


def _local(g: FOFormula) -> FOFormula | None:
    """One rewrite at the root of g, or None when nothing applies."""
    if isinstance(g, Not):
        b = g.body
        if isinstance(b, FOTrue):
            return FO_FALSE
        if isinstance(b, FOFalse):
            return FO_TRUE
        if isinstance(b, Not):
            return b.body
        if isinstance(b, Eq):
            return Neq(b.left, b.right)
        if isinstance(b, Neq):
            return Eq(b.left, b.right)
        if isinstance(b, Forall):
            return Exists(b.var, Not(b.body))
        if isinstance(b, Exists):
            return Forall(b.var, Not(b.body))
        if isinstance(b, FOImp):
            return FOAnd(b.left, Not(b.right))
        if isinstance(b, FOOr):
            return FOAnd(Not(b.left), Not(b.right))
        if isinstance(b, FOAnd):
            parts = _conjuncts(b)
            return _make_imp(parts[:-1], Not(parts[-1]))
        return None
    if isinstance(g, FOAnd):
        if isinstance(g.left, FOTrue):
            return g.right
        if isinstance(g.right, FOTrue):
            return g.left
        if isinstance(g.left, FOFalse) or isinstance(g.right, FOFalse):
            return FO_FALSE
        return None
    if isinstance(g, FOOr):
        if isinstance(g.left, FOFalse):
            return g.right
        if isinstance(g.right, FOFalse):
            return g.left
        if isinstance(g.left, FOTrue) or isinstance(g.right, FOTrue):
            return FO_TRUE
        return None
    if isinstance(g, FOImp):
        if isinstance(g.left, FOTrue):
            return g.right
        if isinstance(g.left, FOFalse):
            return FO_TRUE
        if isinstance(g.right, FOTrue):
            return FO_TRUE
        if isinstance(g.right, FOFalse):
            return Not(g.left)
        if g.left == g.right:
            return FO_TRUE
        return None
    if isinstance(g, Eq):
        return FO_TRUE if g.left == g.right else None
    if isinstance(g, Neq):
        return FO_FALSE if g.left == g.right else None
    if isinstance(g, (Forall, Exists)):
        body = g.body
        if isinstance(body, (FOTrue, FOFalse)):
            return body
        if g.var not in fo_free_vars(body):
            return body
        if isinstance(g, Forall):
            ants, cons = _split_imp(body)
            for k, a in enumerate(ants):
                pin = _eq_pin(a, g.var)
                if pin is not None:
                    rest = ants[:k] + ants[k + 1 :]
                    return fo_subst(_make_imp(rest, cons), g.var, pin)
            pin = _neq_pin(cons, g.var)
            if pin is not None:
                return fo_subst(Not(_conj(ants)), g.var, pin)
            return None
        parts = _conjuncts(body)
        for k, c in enumerate(parts):
            pin = _eq_pin(c, g.var)
            if pin is not None:
                rest = parts[:k] + parts[k + 1 :]
                return fo_subst(_conj(rest), g.var, pin)
        return None
    return None


def _sweep(f: FOFormula) -> FOFormula:
    if isinstance(f, Not):
        g: FOFormula = Not(_sweep(f.body))
    elif isinstance(f, FOAnd):
        g = FOAnd(_sweep(f.left), _sweep(f.right))
    elif isinstance(f, FOOr):
        g = FOOr(_sweep(f.left), _sweep(f.right))
    elif isinstance(f, FOImp):
        g = FOImp(_sweep(f.left), _sweep(f.right))
    elif isinstance(f, Forall):
        g = Forall(f.var, _sweep(f.body))
    elif isinstance(f, Exists):
        g = Exists(f.var, _sweep(f.body))
    else:
        g = f
    h = _local(g)
    return g if h is None else h


_SWEEP_CAP = 200


def simplify_formula(f: FOFormula) -> FOFormula:
    for _ in range(_SWEEP_CAP):
        nf = _sweep(f)
        if nf == f:
            return f
        f = nf
    return f


def _prefix_step(matrix: FOFormula, prefix: set[str]) -> FOFormula | None:
    """Eliminate one universally quantified world name forced by the matrix.

    An antecedent equation between two prefix names, or a consequent
    disequation between two, lets the lexicographically larger name be
    replaced by the smaller and its quantifier dropped.
    """

    def both_prefix(a: Term, b: Term) -> bool:
        return (
            isinstance(a, Var)
            and isinstance(b, Var)
            and a.name in prefix
            and b.name in prefix
            and a.name != b.name
        )

    ants, cons = _split_imp(matrix)
    for k, a in enumerate(ants):
        if isinstance(a, Eq) and both_prefix(a.left, a.right):
            lo, hi = sorted((a.left.name, a.right.name), key=_symbol_key)
            rest = ants[:k] + ants[k + 1 :]
            return fo_subst(_make_imp(rest, cons), hi, Var(lo))
    if isinstance(cons, Neq) and both_prefix(cons.left, cons.right):
        lo, hi = sorted((cons.left.name, cons.right.name), key=_symbol_key)
        return fo_subst(Not(_conj(ants)), hi, Var(lo))
    return None


_ROUND_CAP = 200


def simplify(sentence: FOSentence) -> FOSentence:
    """Shrink a sentence, preserving its models; deterministic."""
    matrix = sentence.matrix
    variables = sentence.variables
    for _ in range(_ROUND_CAP):
        matrix = simplify_formula(matrix)
        variables = tuple(v for v in variables if v in fo_free_vars(matrix))
        step = _prefix_step(matrix, set(variables))
        if step is None:
            break
        matrix = step
    matrix = simplify_formula(matrix)
    variables = tuple(v for v in variables if v in fo_free_vars(matrix))
    return FOSentence(variables, matrix)


# ---------------------------------------------------------------------------
# JSON encoding.


def term_to_json(t: Term) -> dict:
    return {"kind": "var" if isinstance(t, Var) else "const", "name": t.name}


def term_from_json(data: dict) -> Term:
    if data["kind"] == "var":
        return Var(data["name"])
    if data["kind"] == "const":
        return Const(data["name"])
    raise ValueError(f"unknown term kind {data['kind']!r}")


def fo_to_json(f: FOFormula) -> dict:
    if isinstance(f, FOTrue):
        return {"op": "true"}
    if isinstance(f, FOFalse):
        return {"op": "false"}
    if isinstance(f, Rel):
        return {"op": "rel", "left": term_to_json(f.left), "right": term_to_json(f.right)}
    if isinstance(f, Eq):
        return {"op": "eq", "left": term_to_json(f.left), "right": term_to_json(f.right)}
    if isinstance(f, Neq):
        return {"op": "neq", "left": term_to_json(f.left), "right": term_to_json(f.right)}
    if isinstance(f, Not):
        return {"op": "not", "body": fo_to_json(f.body)}
    if isinstance(f, FOAnd):
        return {"op": "and", "left": fo_to_json(f.left), "right": fo_to_json(f.right)}
    if isinstance(f, FOOr):
        return {"op": "or", "left": fo_to_json(f.left), "right": fo_to_json(f.right)}
    if isinstance(f, FOImp):
        return {"op": "imp", "left": fo_to_json(f.left), "right": fo_to_json(f.right)}
    if isinstance(f, Forall):
        return {"op": "forall", "var": f.var, "body": fo_to_json(f.body)}
    if isinstance(f, Exists):
        return {"op": "exists", "var": f.var, "body": fo_to_json(f.body)}
    raise TypeError(f"not a first-order formula: {f!r}")


def fo_from_json(data: dict) -> FOFormula:
    op = data["op"]
    if op == "true":
        return FO_TRUE
    if op == "false":
        return FO_FALSE
    if op in ("rel", "eq", "neq"):
        cls = {"rel": Rel, "eq": Eq, "neq": Neq}[op]
        return cls(term_from_json(data["left"]), term_from_json(data["right"]))
    if op == "not":
        return Not(fo_from_json(data["body"]))
    if op in ("and", "or", "imp"):
        cls = {"and": FOAnd, "or": FOOr, "imp": FOImp}[op]
        return cls(fo_from_json(data["left"]), fo_from_json(data["right"]))
    if op in ("forall", "exists"):
        cls = {"forall": Forall, "exists": Exists}[op]
        return cls(data["var"], fo_from_json(data["body"]))
    raise ValueError(f"unknown operator {op!r}")


def sentence_to_json(s: FOSentence) -> dict:
    return {"variables": list(s.variables), "matrix": fo_to_json(s.matrix)}


def sentence_from_json(data: dict) -> FOSentence:
    return FOSentence(tuple(data["variables"]), fo_from_json(data["matrix"]))
