"""Shape analysis for inequalities: polarity, PIA blocks, inductive certificates.

An inequality Ant <= Suc is inductive when the left side decomposes under
/\\ and \\/ into PIA blocks, the right side fits the successor grammar whose
implication antecedents are again PIA blocks, the dependence constraints
collected from those blocks are acyclic, and every variable of each residual
inequality produced by Stage-1 distribution and splitting is the main
variable of some PIA block of that residual.  The last condition is what
guarantees that the elimination stage always finds a minimal-valuation
inequality `t <= p` for the variable it is about to eliminate, so the
reduction provably runs to completion on certified inputs.

A PIA block is read along its right spine: follow box bodies and
implication consequents.  The spine ends in either the main variable,
which is then forced, or T, in which case the block constrains nothing.
Implication antecedents inside a block must be positive formulas (no
implication, no box restriction) and contribute dependence constraints
`q below main` for each of their variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .syntax import (
    And,
    Box,
    BDiam,
    Formula,
    Imp,
    Inequality,
    Or,
    Prop,
    Top,
    is_base,
    prop_names,
    show,
)


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def polarity_map(f: Formula) -> list[tuple[tuple[int, ...], str, Polarity]]:
    """Every variable occurrence with its path and polarity.

    An occurrence is positive iff it sits under an even number of
    implication antecedents; box, bdiam, /\\ and \\/ do not flip.
    """
    out: list[tuple[tuple[int, ...], str, Polarity]] = []

    def rec(g: Formula, path: tuple[int, ...], lefts: int) -> None:
        if isinstance(g, Prop):
            pol = Polarity.POSITIVE if lefts % 2 == 0 else Polarity.NEGATIVE
            out.append((path, g.name, pol))
        elif isinstance(g, Imp):
            rec(g.left, path + (0,), lefts + 1)
            rec(g.right, path + (1,), lefts)
        elif isinstance(g, (And, Or)):
            rec(g.left, path + (0,), lefts)
            rec(g.right, path + (1,), lefts)
        elif isinstance(g, (Box, BDiam)):
            rec(g.body, path + (0,), lefts)

    rec(f, (), 0)
    return out


def prop_polarities(f: Formula, name: str) -> set[Polarity]:
    """The set of polarities with which `name` occurs in f."""
    return {pol for _, n, pol in polarity_map(f) if n == name}


def is_pos(f: Formula, allowed: set[str] | None = None) -> bool:
    """Positive formulas: variables, T, box, /\\ and \\/ only.

    When `allowed` is given, every variable must come from it.
    """
    if isinstance(f, Prop):
        return allowed is None or f.name in allowed
    if isinstance(f, Top):
        return True
    if isinstance(f, Box):
        return is_pos(f.body, allowed)
    if isinstance(f, (And, Or)):
        return is_pos(f.left, allowed) and is_pos(f.right, allowed)
    return False


def spine_terminal(f: Formula) -> Formula:
    """Follow box bodies and implication consequents to the end of the spine."""
    while True:
        if isinstance(f, Box):
            f = f.body
        elif isinstance(f, Imp):
            f = f.right
        else:
            return f


def parse_pia(f: Formula, main: str) -> frozenset[tuple[str, str]] | None:
    """Check that f is a PIA block with the given main variable.

    Returns the collected dependence constraints (q, main), one per
    variable q of an implication antecedent, or None when f does not fit.
    A constraint (main, main) would break irreflexivity and fails here.
    """
    if isinstance(f, Prop):
        return frozenset() if f.name == main else None
    if isinstance(f, Top):
        return frozenset()
    if isinstance(f, Box):
        return parse_pia(f.body, main)
    if isinstance(f, Imp):
        if not is_pos(f.left):
            return None
        left_vars = prop_names(f.left)
        if main in left_vars:
            return None
        rest = parse_pia(f.right, main)
        if rest is None:
            return None
        return rest | {(q, main) for q in left_vars}
    return None


def _parse_pia_top(f: Formula) -> bool:
    """A PIA block whose spine ends in T; any fresh main variable fits."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Box):
        return _parse_pia_top(f.body)
    if isinstance(f, Imp):
        return is_pos(f.left) and _parse_pia_top(f.right)
    return False


@dataclass(frozen=True)
class OmegaOrder:
    """Strict dependence order on variables; (q, p) means q lies below p."""

    edges: frozenset[tuple[str, str]]

    def below(self, name: str) -> set[str]:
        seen: set[str] = set()
        frontier = [name]
        while frontier:
            v = frontier.pop()
            for q, p in self.edges:
                if p == v and q not in seen:
                    seen.add(q)
                    frontier.append(q)
        return seen

    def is_acyclic(self) -> bool:
        return all(v not in self.below(v) for v in {p for _, p in self.edges})

    def minimal(self, names: set[str]) -> list[str]:
        """Members of `names` with nothing from `names` below them, sorted."""
        return sorted(v for v in names if not (self.below(v) & names))


EMPTY_ORDER = OmegaOrder(frozenset())


@dataclass(frozen=True)
class PiaBlock:
    path: tuple[int, ...]
    formula: Formula
    main: str | None

    def to_json(self) -> dict:
        return {
            "path": list(self.path),
            "formula": show(self.formula),
            "main": self.main,
        }


@dataclass(frozen=True)
class InductiveCertificate:
    omega: OmegaOrder
    ant_blocks: tuple[PiaBlock, ...]
    suc_blocks: tuple[PiaBlock, ...]

    def to_json(self) -> dict:
        return {
            "inductive": True,
            "omega": sorted(list(e) for e in self.omega.edges),
            "ant_blocks": [b.to_json() for b in self.ant_blocks],
            "suc_blocks": [b.to_json() for b in self.suc_blocks],
        }


@dataclass(frozen=True)
class InductiveFailure:
    condition: str
    reason: str

    def to_json(self) -> dict:
        return {"inductive": False, "condition": self.condition, "reason": self.reason}


def ant_leaves(f: Formula, path: tuple[int, ...] = ()) -> list[tuple[tuple[int, ...], Formula]]:
    """Leaves of the /\\ and \\/ skeleton of an antecedent."""
    if isinstance(f, (And, Or)):
        return ant_leaves(f.left, path + (0,)) + ant_leaves(f.right, path + (1,))
    return [(path, f)]


def dnf_parts(f: Formula) -> list[Formula]:
    """Disjuncts of the antecedent after distributing /\\ over \\/."""
    if isinstance(f, Or):
        return dnf_parts(f.left) + dnf_parts(f.right)
    if isinstance(f, And):
        return [And(a, b) for a in dnf_parts(f.left) for b in dnf_parts(f.right)]
    return [f]


def cnf_parts(f: Formula) -> list[Formula]:
    """Conjuncts of the successor after distributing box, -> and \\/ over /\\."""
    if isinstance(f, And):
        return cnf_parts(f.left) + cnf_parts(f.right)
    if isinstance(f, Box):
        return [Box(c) for c in cnf_parts(f.body)]
    if isinstance(f, Imp):
        return [Imp(f.left, c) for c in cnf_parts(f.right)]
    if isinstance(f, Or):
        return [Or(a, b) for a in cnf_parts(f.left) for b in cnf_parts(f.right)]
    return [f]


def residual_inequalities(ineq: Inequality) -> list[Inequality]:
    """The Stage-1 normal form: one inequality per disjunct/conjunct pair."""
    return [
        Inequality(d, c)
        for c in cnf_parts(ineq.rhs)
        for d in dnf_parts(ineq.lhs)
    ]


def _suc_block_mains(f: Formula) -> set[str]:
    """Main variables of the PIA blocks sitting left of -> in a successor."""
    mains: set[str] = set()

    def rec(g: Formula) -> None:
        if isinstance(g, Imp):
            t = spine_terminal(g.left)
            if isinstance(t, Prop):
                mains.add(t.name)
            rec(g.right)
        elif isinstance(g, (And, Or)):
            rec(g.left)
            rec(g.right)
        elif isinstance(g, Box):
            rec(g.body)

    rec(f)
    return mains


def _residual_sources(res: Inequality) -> set[str]:
    mains: set[str] = set()
    for _, block in ant_leaves(res.lhs):
        t = spine_terminal(block)
        if isinstance(t, Prop):
            mains.add(t.name)
    return mains | _suc_block_mains(res.rhs)


def check_inductive(ineq: Inequality) -> InductiveCertificate | InductiveFailure:
    """Certify the inductive shape of an inequality, or explain the failure."""
    if not (is_base(ineq.lhs) and is_base(ineq.rhs)):
        return InductiveFailure(
            "language",
            "only T, variables, /\\, \\/, -> and box are allowed here",
        )

    constraints: set[tuple[str, str]] = set()
    ant_blocks: list[PiaBlock] = []
    for path, block in ant_leaves(ineq.lhs):
        t = spine_terminal(block)
        if isinstance(t, Prop):
            cs = parse_pia(block, t.name)
            if cs is None:
                return InductiveFailure(
                    "ant-shape",
                    f"left-hand block {show(block)} is not a PIA formula "
                    f"with main variable {t.name}",
                )
            constraints |= cs
            ant_blocks.append(PiaBlock(path, block, t.name))
        elif isinstance(t, Top):
            if not _parse_pia_top(block):
                return InductiveFailure(
                    "ant-shape",
                    f"left-hand block {show(block)} is not a PIA formula",
                )
            ant_blocks.append(PiaBlock(path, block, None))
        else:
            return InductiveFailure(
                "ant-shape",
                f"left-hand block {show(block)} has spine terminal "
                f"{show(t)}; a PIA spine must end in a variable or T",
            )

    suc_blocks: list[PiaBlock] = []

    def parse_suc(g: Formula, path: tuple[int, ...]) -> str | None:
        if isinstance(g, (Prop, Top)):
            return None
        if isinstance(g, Box):
            return parse_suc(g.body, path + (0,))
        if isinstance(g, (And, Or)):
            err = parse_suc(g.left, path + (0,))
            if err is not None:
                return err
            return parse_suc(g.right, path + (1,))
        if isinstance(g, Imp):
            block = g.left
            t = spine_terminal(block)
            if isinstance(t, Prop):
                cs = parse_pia(block, t.name)
                if cs is None:
                    return (
                        f"implication antecedent {show(block)} is not a PIA "
                        f"formula with main variable {t.name}"
                    )
                constraints.update(cs)
                suc_blocks.append(PiaBlock(path + (0,), block, t.name))
            elif isinstance(t, Top):
                if not _parse_pia_top(block):
                    return f"implication antecedent {show(block)} is not a PIA formula"
                suc_blocks.append(PiaBlock(path + (0,), block, None))
            else:
                return (
                    f"implication antecedent {show(block)} has spine terminal "
                    f"{show(t)}; a PIA spine must end in a variable or T"
                )
            return parse_suc(g.right, path + (1,))
        return f"right-hand subformula {show(g)} is outside the successor grammar"

    err = parse_suc(ineq.rhs, ())
    if err is not None:
        return InductiveFailure("suc-shape", err)

    omega = OmegaOrder(frozenset(constraints))
    if not omega.is_acyclic():
        cyclic = sorted(v for v in {p for _, p in omega.edges} if v in omega.below(v))
        return InductiveFailure(
            "cycle",
            f"dependence constraints are cyclic at {', '.join(cyclic)}",
        )

    for res in residual_inequalities(ineq):
        here = prop_names(res.lhs) | prop_names(res.rhs)
        missing = sorted(here - _residual_sources(res))
        if missing:
            return InductiveFailure(
                "coverage",
                f"variable {missing[0]} heads no PIA block in the residual "
                f"{res}, so no minimal valuation for it exists there",
            )

    return InductiveCertificate(omega, tuple(ant_blocks), tuple(suc_blocks))


def _subformula_at(f: Formula, path: tuple[int, ...]) -> Formula | None:
    for step in path:
        if isinstance(f, (And, Or, Imp)):
            f = f.left if step == 0 else f.right
        elif isinstance(f, (Box, BDiam)) and step == 0:
            f = f.body
        else:
            return None
    return f


def validate_certificate(ineq: Inequality, cert: InductiveCertificate) -> bool:
    """Replay a certificate against the grammars it claims to witness."""
    if not cert.omega.is_acyclic():
        return False
    for block in cert.ant_blocks:
        if _subformula_at(ineq.lhs, block.path) != block.formula:
            return False
        if block.main is None:
            if not _parse_pia_top(block.formula):
                return False
        else:
            cs = parse_pia(block.formula, block.main)
            if cs is None or not cs <= cert.omega.edges:
                return False
    for block in cert.suc_blocks:
        if _subformula_at(ineq.rhs, block.path) != block.formula:
            return False
        if block.main is None:
            if not _parse_pia_top(block.formula):
                return False
        else:
            cs = parse_pia(block.formula, block.main)
            if cs is None or not cs <= cert.omega.edges:
                return False
    if isinstance(check_inductive(ineq), InductiveFailure):
        return False
    return True
