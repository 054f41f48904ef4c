"""Finite frames, models, and the model-checking oracle.

A frame is a finite set of worlds 0..n-1 with one binary relation R.
On finite frames every subset of worlds is an admissible value for a
variable, so validity quantifies over all subsets; nominals range over
singletons and conominals over complements of singletons.

Two independent evaluation paths are kept deliberately: a direct
recursive evaluator over the syntax tree (the reference), and flat
integer programs run by the kernels (the fast path used for exhaustive
validity checks).  Tests hold the two against each other, and
correspondence_check holds modal validity against the first-order
translation frame by frame.
"""
from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .fol import (
    Const,
    Eq,
    Exists,
    FOAnd,
    FOFalse,
    FOFormula,
    FOImp,
    FOOr,
    FOSentence,
    FOTrue,
    Forall,
    Neq,
    Not,
    Rel,
    _symbol_key,
)
from .kernels.opcodes import (
    F_AND,
    F_EQ,
    F_EXISTS,
    F_FALSE,
    F_FORALL,
    F_IMP,
    F_NEQ,
    F_NOT,
    F_OR,
    F_REL,
    F_TRUE,
    M_AND,
    M_BDIAM,
    M_BOT,
    M_BOX,
    M_IMP,
    M_OR,
    M_PUSH,
    M_TOP,
)
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
    conom_names,
    nom_names,
    prop_names,
)


class UnassignedSymbol(LookupError):
    """A formula mentions a symbol the valuation does not cover."""


@dataclass(frozen=True)
class FiniteFrame:
    """Worlds 0..n-1 with edge set R."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "FiniteFrame":
        edges = {
            (w, v)
            for w in range(n)
            for v in range(n)
            if bits >> (w * n + v) & 1
        }
        return cls(n, frozenset(edges))

    def successors(self, w: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if (w, v) in self.edges)

    def predecessors(self, w: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if (v, w) in self.edges)

    def arrays(self) -> tuple[array, array]:
        """Successor and predecessor bitmask rows for the kernels."""
        rows = array("q", [0] * self.n)
        preds = array("q", [0] * self.n)
        for w, v in self.edges:
            rows[w] |= 1 << v
            preds[v] |= 1 << w
        return rows, preds

    def __str__(self) -> str:
        pairs = ",".join(f"{w}->{v}" for w, v in sorted(self.edges))
        return f"frame(n={self.n}; {pairs})" if pairs else f"frame(n={self.n})"


def all_frames(max_n: int) -> Iterator[FiniteFrame]:
    """Every frame with 1..max_n worlds, in a fixed order."""
    for n in range(1, max_n + 1):
        for bits in range(1 << (n * n)):
            yield FiniteFrame.from_bits(n, bits)


@dataclass
class Valuation:
    """Values for variables (world sets), nominals and conominals (worlds)."""

    props: dict[str, frozenset[int]] = field(default_factory=dict)
    noms: dict[str, int] = field(default_factory=dict)
    conoms: dict[str, int] = field(default_factory=dict)


@dataclass
class Model:
    frame: FiniteFrame
    valuation: Valuation


def eval_formula(model: Model, world: int, f: Formula) -> bool:
    """Reference evaluator, straight from the semantic clauses."""
    val = model.valuation
    if isinstance(f, Prop):
        try:
            return world in val.props[f.name]
        except KeyError:
            raise UnassignedSymbol(f.name) from None
    if isinstance(f, Nom):
        try:
            return world == val.noms[f.name]
        except KeyError:
            raise UnassignedSymbol(f.name) from None
    if isinstance(f, CoNom):
        try:
            return world != val.conoms[f.name]
        except KeyError:
            raise UnassignedSymbol(f.name) from None
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return eval_formula(model, world, f.left) and eval_formula(model, world, f.right)
    if isinstance(f, Or):
        return eval_formula(model, world, f.left) or eval_formula(model, world, f.right)
    if isinstance(f, Imp):
        return (not eval_formula(model, world, f.left)) or eval_formula(
            model, world, f.right
        )
    if isinstance(f, Box):
        return all(
            eval_formula(model, v, f.body) for v in model.frame.successors(world)
        )
    if isinstance(f, BDiam):
        return any(
            eval_formula(model, v, f.body) for v in model.frame.predecessors(world)
        )
    raise TypeError(f"not a formula: {f!r}")


def truth_set(model: Model, f: Formula) -> frozenset[int]:
    return frozenset(w for w in range(model.frame.n) if eval_formula(model, w, f))


def holds_ineq(model: Model, ineq: Inequality) -> bool:
    return truth_set(model, ineq.lhs) <= truth_set(model, ineq.rhs)


def holds_quasi(model: Model, quasi: QuasiInequality) -> bool:
    if all(holds_ineq(model, iq) for iq in quasi.antecedents):
        return holds_ineq(model, quasi.conclusion)
    return True


def _symbols_of(formulas: Sequence[Formula]) -> tuple[list[str], list[str], list[str]]:
    props: set[str] = set()
    noms: set[str] = set()
    conoms: set[str] = set()
    for f in formulas:
        props |= prop_names(f)
        noms |= nom_names(f)
        conoms |= conom_names(f)
    key = _symbol_key
    return sorted(props, key=key), sorted(noms, key=key), sorted(conoms, key=key)


def _valuations(frame: FiniteFrame, formulas: Sequence[Formula]) -> Iterator[Valuation]:
    """Every admissible valuation of the symbols occurring in `formulas`."""
    props, noms, conoms = _symbols_of(formulas)
    worlds = range(frame.n)
    subsets = [
        frozenset(w for w in worlds if mask >> w & 1) for mask in range(1 << frame.n)
    ]
    for nom_pick in itertools.product(worlds, repeat=len(noms)):
        for conom_pick in itertools.product(worlds, repeat=len(conoms)):
            for prop_pick in itertools.product(subsets, repeat=len(props)):
                yield Valuation(
                    dict(zip(props, prop_pick)),
                    dict(zip(noms, nom_pick)),
                    dict(zip(conoms, conom_pick)),
                )


def ineq_valid(frame: FiniteFrame, ineq: Inequality) -> bool:
    """Reference validity: every valuation, every world."""
    for val in _valuations(frame, [ineq.lhs, ineq.rhs]):
        if not holds_ineq(Model(frame, val), ineq):
            return False
    return True


def quasi_valid(frame: FiniteFrame, quasi: QuasiInequality) -> bool:
    """Reference validity of a quasi-inequality on a frame."""
    formulas = [side for iq in quasi.antecedents for side in (iq.lhs, iq.rhs)]
    formulas += [quasi.conclusion.lhs, quasi.conclusion.rhs]
    for val in _valuations(frame, formulas):
        if not holds_quasi(Model(frame, val), quasi):
            return False
    return True


# ---------------------------------------------------------------------------
# Compilation to kernel programs.


class SlotTable:
    """Assigns literal-table slots to (kind, name) symbols."""

    def __init__(self) -> None:
        self.index: dict[tuple[str, str], int] = {}

    def slot(self, kind: str, name: str) -> int:
        key = (kind, name)
        if key not in self.index:
            self.index[key] = len(self.index)
        return self.index[key]

    @property
    def nslots(self) -> int:
        return len(self.index)

    def of_kind(self, kind: str) -> list[tuple[str, int]]:
        pairs = [(name, s) for (k, name), s in self.index.items() if k == kind]
        return sorted(pairs, key=lambda p: _symbol_key(p[0]))


@dataclass
class CompiledFormula:
    ops: array
    args: array


def compile_formula(f: Formula, table: SlotTable) -> CompiledFormula:
    """Flatten a formula into a postfix kernel program."""
    ops: list[int] = []
    args: list[int] = []

    def rec(g: Formula) -> None:
        if isinstance(g, Prop):
            ops.append(M_PUSH)
            args.append(table.slot("prop", g.name))
        elif isinstance(g, Nom):
            ops.append(M_PUSH)
            args.append(table.slot("nom", g.name))
        elif isinstance(g, CoNom):
            ops.append(M_PUSH)
            args.append(table.slot("conom", g.name))
        elif isinstance(g, Top):
            ops.append(M_TOP)
            args.append(0)
        elif isinstance(g, Bot):
            ops.append(M_BOT)
            args.append(0)
        elif isinstance(g, (And, Or, Imp)):
            rec(g.left)
            rec(g.right)
            ops.append({And: M_AND, Or: M_OR, Imp: M_IMP}[type(g)])
            args.append(0)
        elif isinstance(g, (Box, BDiam)):
            rec(g.body)
            ops.append(M_BOX if isinstance(g, Box) else M_BDIAM)
            args.append(0)
        else:
            raise TypeError(f"not a formula: {g!r}")

    rec(f)
    return CompiledFormula(array("q", ops), array("q", args))


@dataclass
class _CompiledIneq:
    table: SlotTable
    lhs: CompiledFormula
    rhs: CompiledFormula
    prop_slots: array
    noms: list[tuple[str, int]]
    conoms: list[tuple[str, int]]


def _compile_ineq(ineq: Inequality) -> _CompiledIneq:
    table = SlotTable()
    lhs = compile_formula(ineq.lhs, table)
    rhs = compile_formula(ineq.rhs, table)
    prop_slots = array("q", [s for _, s in table.of_kind("prop")])
    return _CompiledIneq(
        table, lhs, rhs, prop_slots, table.of_kind("nom"), table.of_kind("conom")
    )


def _compiled_frame_valid(ci: _CompiledIneq, frame: FiniteFrame, rows, preds) -> bool:
    n = frame.n
    if n * len(ci.prop_slots) > 24:
        raise ValueError("too many variable bits to enumerate")
    full = (1 << n) - 1
    lits = array("q", [0] * max(ci.table.nslots, 1))
    impl = kernels.impl
    for nom_pick in itertools.product(range(n), repeat=len(ci.noms)):
        for (_, s), w in zip(ci.noms, nom_pick):
            lits[s] = 1 << w
        for conom_pick in itertools.product(range(n), repeat=len(ci.conoms)):
            for (_, s), w in zip(ci.conoms, conom_pick):
                lits[s] = full & ~(1 << w)
            if not impl.ineq_valid_all(
                ci.lhs.ops,
                ci.lhs.args,
                ci.rhs.ops,
                ci.rhs.args,
                lits,
                ci.prop_slots,
                n,
                rows,
                preds,
            ):
                return False
    return True


def frame_valid(frame: FiniteFrame, ineq: Inequality) -> bool:
    """Kernel-backed validity: variables in-kernel, names enumerated here."""
    ci = _compile_ineq(ineq)
    rows, preds = frame.arrays()
    return _compiled_frame_valid(ci, frame, rows, preds)


@dataclass
class CompiledSentence:
    ops: array
    aas: array
    bs: array
    root: int
    nslots: int


def compile_sentence(sentence: FOSentence) -> CompiledSentence:
    """Flatten a closed sentence into a kernel tree program."""
    closed: FOFormula = sentence.matrix
    for v in reversed(sentence.variables):
        closed = Forall(v, closed)

    ops: list[int] = []
    aas: list[int] = []
    bs: list[int] = []
    scope: dict[str, int] = {}
    slots = itertools.count()

    def emit(op: int, a: int, b: int) -> int:
        ops.append(op)
        aas.append(a)
        bs.append(b)
        return len(ops) - 1

    def slot_of(t) -> int:
        if isinstance(t, Const) or t.name not in scope:
            raise ValueError(f"sentence is not closed: {t.name} is unbound")
        return scope[t.name]

    def rec(f: FOFormula) -> int:
        if isinstance(f, FOTrue):
            return emit(F_TRUE, 0, 0)
        if isinstance(f, FOFalse):
            return emit(F_FALSE, 0, 0)
        if isinstance(f, Rel):
            return emit(F_REL, slot_of(f.left), slot_of(f.right))
        if isinstance(f, Eq):
            return emit(F_EQ, slot_of(f.left), slot_of(f.right))
        if isinstance(f, Neq):
            return emit(F_NEQ, slot_of(f.left), slot_of(f.right))
        if isinstance(f, Not):
            return emit(F_NOT, rec(f.body), 0)
        if isinstance(f, (FOAnd, FOOr, FOImp)):
            a = rec(f.left)
            b = rec(f.right)
            op = {FOAnd: F_AND, FOOr: F_OR, FOImp: F_IMP}[type(f)]
            return emit(op, a, b)
        if isinstance(f, (Forall, Exists)):
            slot = next(slots)
            saved = scope.get(f.var)
            scope[f.var] = slot
            child = rec(f.body)
            if saved is None:
                del scope[f.var]
            else:
                scope[f.var] = saved
            return emit(F_FORALL if isinstance(f, Forall) else F_EXISTS, slot, child)
        raise TypeError(f"not a first-order formula: {f!r}")

    root = rec(closed)
    nslots = next(slots)
    if nslots > 64:
        raise ValueError("too many quantifier slots")
    return CompiledSentence(
        array("q", ops), array("q", aas), array("q", bs), root, max(nslots, 1)
    )


def eval_fo(frame: FiniteFrame, sentence: FOSentence) -> bool:
    """Kernel-backed truth of a closed sentence on a frame."""
    cs = compile_sentence(sentence)
    rows, _ = frame.arrays()
    return bool(
        kernels.impl.fo_eval(cs.ops, cs.aas, cs.bs, cs.root, frame.n, rows, cs.nslots)
    )


def eval_fo_formula(frame: FiniteFrame, f: FOFormula, assignment: dict[str, int]) -> bool:
    """Reference evaluator for first-order formulas.

    `assignment` gives worlds for free variables and named constants.
    """

    def rec(g: FOFormula, env: dict[str, int]) -> bool:
        def world(t) -> int:
            try:
                return env[t.name]
            except KeyError:
                raise UnassignedSymbol(t.name) from None

        if isinstance(g, FOTrue):
            return True
        if isinstance(g, FOFalse):
            return False
        if isinstance(g, Rel):
            return (world(g.left), world(g.right)) in frame.edges
        if isinstance(g, Eq):
            return world(g.left) == world(g.right)
        if isinstance(g, Neq):
            return world(g.left) != world(g.right)
        if isinstance(g, Not):
            return not rec(g.body, env)
        if isinstance(g, FOAnd):
            return rec(g.left, env) and rec(g.right, env)
        if isinstance(g, FOOr):
            return rec(g.left, env) or rec(g.right, env)
        if isinstance(g, FOImp):
            return (not rec(g.left, env)) or rec(g.right, env)
        if isinstance(g, Forall):
            return all(rec(g.body, {**env, g.var: w}) for w in range(frame.n))
        if isinstance(g, Exists):
            return any(rec(g.body, {**env, g.var: w}) for w in range(frame.n))
        raise TypeError(f"not a first-order formula: {g!r}")

    return rec(f, dict(assignment))


def sentence_valid(frame: FiniteFrame, sentence: FOSentence) -> bool:
    """Reference truth of a closed sentence (universal prefix unfolded)."""
    closed: FOFormula = sentence.matrix
    for v in reversed(sentence.variables):
        closed = Forall(v, closed)
    return eval_fo_formula(frame, closed, {})


# ---------------------------------------------------------------------------
# Correspondence checking.


@dataclass(frozen=True)
class Counterexample:
    frame: FiniteFrame
    modal_valid: bool
    fo_valid: bool

    def __str__(self) -> str:
        return (
            f"{self.frame}: inequality {'holds' if self.modal_valid else 'fails'}, "
            f"sentence {'holds' if self.fo_valid else 'fails'}"
        )


@dataclass(frozen=True)
class CorrespondenceReport:
    agree: bool
    frames_checked: int
    counterexamples: tuple[Counterexample, ...]
    max_n: int
    disagreements: int = 0

    def __str__(self) -> str:
        if self.agree:
            return (
                f"inequality and sentence agree on all {self.frames_checked} "
                f"frames with up to {self.max_n} worlds"
            )
        return (
            f"inequality and sentence disagree on {self.disagreements} of "
            f"{self.frames_checked} frames with up to {self.max_n} worlds"
        )


def correspondence_check(
    ineq: Inequality,
    sentences: FOSentence | Sequence[FOSentence],
    max_n: int = 3,
) -> CorrespondenceReport:
    """Exhaustively compare modal validity with first-order truth.

    The inequality is checked under every admissible valuation and the
    sentences on the bare frame, for every frame with up to max_n worlds.
    """
    if isinstance(sentences, FOSentence):
        sentences = [sentences]
    ci = _compile_ineq(ineq)
    programs = [compile_sentence(s) for s in sentences]
    counterexamples: list[Counterexample] = []
    checked = 0
    disagreements = 0
    impl = kernels.impl
    for frame in all_frames(max_n):
        checked += 1
        rows, preds = frame.arrays()
        modal = _compiled_frame_valid(ci, frame, rows, preds)
        fo = all(
            impl.fo_eval(cs.ops, cs.aas, cs.bs, cs.root, frame.n, rows, cs.nslots)
            for cs in programs
        )
        if modal != fo:
            disagreements += 1
            if len(counterexamples) < 5:
                counterexamples.append(Counterexample(frame, modal, bool(fo)))
    return CorrespondenceReport(
        not counterexamples, checked, tuple(counterexamples), max_n, disagreements
    )


# ---------------------------------------------------------------------------
# Projection profiles: the footprint a system leaves on its endpoints.


def projection_profile(
    frame: FiniteFrame,
    ineqs: Sequence[Inequality],
    i0: str = "i0",
    m0: str = "m0",
) -> frozenset[tuple[int, int]]:
    """All (world of i0, excluded world of m0) pairs some admissible
    valuation of the remaining symbols extends to a model of `ineqs`.

    Rewrites of a system are exactly truth-preserving when they leave
    this set unchanged on every frame, because the final conclusion
    `i0 <= m0` only reads these two coordinates.
    """
    n = frame.n
    full = (1 << n) - 1
    rows, preds = frame.arrays()
    table = SlotTable()
    programs = [
        (compile_formula(iq.lhs, table), compile_formula(iq.rhs, table))
        for iq in ineqs
    ]
    table.slot("nom", i0)
    table.slot("conom", m0)

    order: list[tuple[str, str, int]] = [
        ("nom", i0, table.slot("nom", i0)),
        ("conom", m0, table.slot("conom", m0)),
    ]
    for kind in ("nom", "conom", "prop"):
        for name, slot in table.of_kind(kind):
            if (kind, name) not in (("nom", i0), ("conom", m0)):
                order.append((kind, name, slot))

    position = {(kind, name): d for d, (kind, name, _) in enumerate(order)}
    ready: list[list[int]] = [[] for _ in order]
    immediate: list[int] = []
    for k, iq in enumerate(ineqs):
        names = (
            [("prop", p) for p in prop_names(iq.lhs) | prop_names(iq.rhs)]
            + [("nom", p) for p in nom_names(iq.lhs) | nom_names(iq.rhs)]
            + [("conom", p) for p in conom_names(iq.lhs) | conom_names(iq.rhs)]
        )
        if not names:
            immediate.append(k)
        else:
            ready[max(position[nm] for nm in names)].append(k)

    lits = array("q", [0] * max(table.nslots, 1))
    impl = kernels.impl

    def check(k: int) -> bool:
        lhs, rhs = programs[k]
        lm = impl.modal_mask(lhs.ops, lhs.args, lits, n, rows, preds)
        if lm == 0:
            return True
        rm = impl.modal_mask(rhs.ops, rhs.args, lits, n, rows, preds)
        return lm & ~rm == 0

    if not all(check(k) for k in immediate):
        return frozenset()

    seen: set[tuple[int, int]] = set()
    picked = [0] * len(order)

    def rec(d: int) -> None:
        if d == len(order):
            seen.add((picked[0], picked[1]))
            return
        if d == 2 and (picked[0], picked[1]) in seen:
            return
        kind, _, slot = order[d]
        if kind == "prop":
            choices: Iterator[tuple[int, int]] = ((m, m) for m in range(full + 1))
        elif kind == "nom":
            choices = ((w, 1 << w) for w in range(n))
        else:
            choices = ((w, full & ~(1 << w)) for w in range(n))
        for value, mask in choices:
            lits[slot] = mask
            picked[d] = value
            if all(check(k) for k in ready[d]):
                rec(d + 1)

    rec(0)
    return frozenset(seen)
