"""Variable elimination for modal inequalities.

The pipeline runs in three stages.  Stage 1 distributes /\\ over \\/ on the
left and box, -> and \\/ over /\\ on the right, then splits the input into
residual inequalities, one per disjunct/conjunct pair.  Stage 2 attaches a
fresh nominal below the left side and a fresh conominal above the right
side, then saturates the system: inequalities bounded above by a conominal
are decomposed with approximation rules, everything else is residuated
until each inequality is bounded above by a variable, a nominal, a
conominal or F.  Stage 3 eliminates the propositional variables one at a
time, innermost first along the dependence order, by substituting the join
of their lower bounds.  What remains mentions only nominals and
conominals, so it translates directly into a first-order frame condition.

Every transformation is recorded as a trace step that names the rule, the
inequalities it consumed and the inequalities it produced, so a run can be
replayed and audited.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold

from .classify import (
    EMPTY_ORDER,
    InductiveCertificate,
    OmegaOrder,
    Polarity,
    check_inductive,
    prop_polarities,
    residual_inequalities,
)
from .syntax import (
    And,
    BDiam,
    Box,
    CoNom,
    Formula,
    Imp,
    Inequality,
    Nom,
    Or,
    Prop,
    QuasiInequality,
    SymbolPool,
    Top,
    prop_names,
    substitute,
)

RULE_DELETE_TOP = "delete-top"
RULE_SPLIT_AND = "split-and"
RULE_SPLIT_OR = "split-or"
RULE_RESIDUATE_IMP = "residuate-imp"
RULE_RESIDUATE_BOX = "residuate-box"
RULE_APPROX_BOX = "approx-box"
RULE_APPROX_IMP = "approx-imp"
RULE_ACKERMANN = "ackermann"

ALL_RULES = (
    RULE_DELETE_TOP,
    RULE_SPLIT_AND,
    RULE_SPLIT_OR,
    RULE_RESIDUATE_IMP,
    RULE_RESIDUATE_BOX,
    RULE_APPROX_BOX,
    RULE_APPROX_IMP,
    RULE_ACKERMANN,
)


@dataclass(frozen=True)
class TraceStep:
    """One rewrite: `consumed` was replaced by `produced` in place.

    For the elimination rule, `consumed` lists the lower-bound
    inequalities of the variable, `produced` lists the inequalities that
    changed under substitution, and `subst` records the variable together
    with the join substituted for it.
    """

    rule: str
    consumed: tuple[Inequality, ...]
    produced: tuple[Inequality, ...]
    subst: tuple[str, Formula] | None = None

    def to_json(self) -> dict:
        out: dict = {
            "rule": self.rule,
            "consumed": [str(iq) for iq in self.consumed],
            "produced": [str(iq) for iq in self.produced],
        }
        if self.subst is not None:
            name, value = self.subst
            out["subst"] = {"variable": name, "value": str(value)}
        return out


@dataclass
class System:
    """A set of inequalities being rewritten, with its name supply.

    i0 names the world below the original left side, m0 the world kept
    out of the original right side; the conclusion of the final
    quasi-inequality is always `i0 <= m0`.
    """

    ineqs: list[Inequality]
    pool: SymbolPool
    i0: str
    m0: str


@dataclass(frozen=True)
class StuckInfo:
    """Why elimination stopped: the variable and the blocking inequality."""

    variable: str
    inequality: Inequality | None
    message: str

    def describe(self) -> str:
        return f"variable {self.variable} not eliminable: {self.message}"


@dataclass
class ReduceResult:
    steps: list[TraceStep]
    stuck: StuckInfo | None


@dataclass
class AlbaResult:
    """Outcome of a full run over every residual inequality."""

    status: str
    quasis: tuple[QuasiInequality, ...]
    traces: list[list[TraceStep]]
    residuals: list[Inequality]
    initial_systems: list[list[Inequality]]
    failure: StuckInfo | None = None

    @property
    def ok(self) -> bool:
        return self.status == "success"

    def to_json(self) -> dict:
        out: dict = {
            "status": self.status,
            "residuals": [str(iq) for iq in self.residuals],
            "quasis": [str(q) for q in self.quasis],
            "traces": [[step.to_json() for step in trace] for trace in self.traces],
        }
        if self.failure is not None:
            out["failure"] = self.failure.describe()
        return out


def preprocess(ineq: Inequality) -> list[Inequality]:
    """Stage 1: split into residual inequalities."""
    return residual_inequalities(ineq)


def first_approximation(ineq: Inequality, pool: SymbolPool | None = None) -> System:
    """Stage 2 entry: pin the inequality between a nominal and a conominal."""
    if pool is None:
        pool = SymbolPool.for_inequality(ineq)
    i0 = pool.fresh_nom()
    m0 = pool.fresh_conom()
    ineqs = [
        Inequality(Nom(i0), ineq.lhs),
        Inequality(ineq.rhs, CoNom(m0)),
    ]
    return System(ineqs, pool, i0, m0)


def _step(iq: Inequality, pool: SymbolPool):
    """One saturation rule at `iq`, or None when it is already settled.

    Returns (rule, products, active flags); a False flag marks a product
    that no rule will ever fire on again, which keeps saturation finite.
    """
    lhs, rhs = iq.lhs, iq.rhs
    if isinstance(rhs, Top):
        return RULE_DELETE_TOP, [], []
    if isinstance(rhs, And):
        return (
            RULE_SPLIT_AND,
            [Inequality(lhs, rhs.left), Inequality(lhs, rhs.right)],
            [True, True],
        )
    if isinstance(rhs, Imp):
        return (
            RULE_RESIDUATE_IMP,
            [Inequality(And(lhs, rhs.left), rhs.right)],
            [True],
        )
    if isinstance(rhs, Box):
        return (
            RULE_RESIDUATE_BOX,
            [Inequality(BDiam(lhs), rhs.body)],
            [True],
        )
    if isinstance(rhs, CoNom):
        if isinstance(lhs, Or):
            return (
                RULE_SPLIT_OR,
                [Inequality(lhs.left, rhs), Inequality(lhs.right, rhs)],
                [True, True],
            )
        if isinstance(lhs, Box):
            n = pool.fresh_conom()
            return (
                RULE_APPROX_BOX,
                [Inequality(Box(CoNom(n)), rhs), Inequality(lhs.body, CoNom(n))],
                [False, True],
            )
        if isinstance(lhs, Imp):
            j = pool.fresh_nom()
            n = pool.fresh_conom()
            return (
                RULE_APPROX_IMP,
                [
                    Inequality(Imp(Nom(j), CoNom(n)), rhs),
                    Inequality(Nom(j), lhs.left),
                    Inequality(lhs.right, CoNom(n)),
                ],
                [False, True, True],
            )
    return None


def _saturate(system: System, steps: list[TraceStep]) -> None:
    ineqs = system.ineqs
    active = [True] * len(ineqs)
    while True:
        try:
            k = active.index(True)
        except ValueError:
            return
        outcome = _step(ineqs[k], system.pool)
        if outcome is None:
            active[k] = False
            continue
        rule, products, flags = outcome
        steps.append(TraceStep(rule, (ineqs[k],), tuple(products)))
        ineqs[k : k + 1] = products
        active[k : k + 1] = flags


def _vars_of(iq: Inequality) -> set[str]:
    return prop_names(iq.lhs) | prop_names(iq.rhs)


def _eliminate_one(system: System, omega: OmegaOrder, steps: list[TraceStep]) -> StuckInfo | None:
    """Eliminate one variable; None on success, StuckInfo when blocked."""
    ineqs = system.ineqs
    remaining: set[str] = set()
    for iq in ineqs:
        remaining |= _vars_of(iq)
    if not remaining:
        return None
    candidates = omega.minimal(remaining)
    if not candidates:
        v = sorted(remaining)[0]
        return StuckInfo(v, None, "the dependence order is cyclic among the remaining variables")
    v = candidates[0]
    target = Prop(v)
    theta = [k for k, iq in enumerate(ineqs) if iq.rhs == target]
    if not theta:
        witness = next((iq for iq in ineqs if v in _vars_of(iq)), None)
        return StuckInfo(
            v,
            witness,
            f"no inequality of the form t <= {v} supplies a minimal valuation",
        )
    for k in theta:
        if v in prop_names(ineqs[k].lhs):
            return StuckInfo(
                v,
                ineqs[k],
                f"the lower bound for {v} mentions {v} itself",
            )
    for k, iq in enumerate(ineqs):
        if k in theta:
            continue
        if prop_polarities(iq.lhs, v) - {Polarity.POSITIVE}:
            return StuckInfo(
                v, iq, f"{v} occurs negatively on the left of {iq}"
            )
        if prop_polarities(iq.rhs, v) - {Polarity.NEGATIVE}:
            return StuckInfo(
                v, iq, f"{v} occurs positively on the right of {iq}"
            )
    join = _fold(Or, [ineqs[k].lhs for k in theta])
    consumed = tuple(ineqs[k] for k in theta)
    kept: list[Inequality] = []
    produced: list[Inequality] = []
    for k, iq in enumerate(ineqs):
        if k in theta:
            continue
        if v in _vars_of(iq):
            new = Inequality(
                substitute(iq.lhs, v, join), substitute(iq.rhs, v, join)
            )
            produced.append(new)
            kept.append(new)
        else:
            kept.append(iq)
    steps.append(TraceStep(RULE_ACKERMANN, consumed, tuple(produced), (v, join)))
    system.ineqs[:] = kept
    return _eliminate_one(system, omega, steps)


def reduce(system: System, omega: OmegaOrder = EMPTY_ORDER) -> ReduceResult:
    """Stage 2 saturation followed by Stage 3 elimination, with trace."""
    steps: list[TraceStep] = []
    _saturate(system, steps)
    stuck = _eliminate_one(system, omega, steps)
    return ReduceResult(steps, stuck)


def run(ineq: Inequality) -> AlbaResult:
    """The full pipeline on one inequality.

    The dependence order comes from the shape certificate when one
    exists; otherwise elimination proceeds in alphabetical order, which
    lets non-certified inputs either succeed anyway or fail with a
    precise reason.
    """
    cert = check_inductive(ineq)
    omega = cert.omega if isinstance(cert, InductiveCertificate) else EMPTY_ORDER
    residuals = preprocess(ineq)
    traces: list[list[TraceStep]] = []
    initial_systems: list[list[Inequality]] = []
    quasis: list[QuasiInequality] = []
    for res in residuals:
        system = first_approximation(res)
        initial_systems.append(list(system.ineqs))
        outcome = reduce(system, omega)
        traces.append(outcome.steps)
        if outcome.stuck is not None:
            return AlbaResult(
                "failure", (), traces, residuals, initial_systems, outcome.stuck
            )
        conclusion = Inequality(Nom(system.i0), CoNom(system.m0))
        quasis.append(QuasiInequality(tuple(system.ineqs), conclusion))
    return AlbaResult(
        "success", tuple(quasis), traces, residuals, initial_systems, None
    )


def replay_steps(initial: list[Inequality], steps: list[TraceStep]) -> list[Inequality]:
    """Re-apply a trace to its initial system and return the final system.

    Non-elimination steps splice their products where the consumed
    inequality stood; elimination steps drop the consumed lower bounds
    and substitute into everything that remains.  The result must equal
    the system the engine actually produced, which makes traces cheap to
    audit.
    """
    current = list(initial)
    for step in steps:
        if step.rule == RULE_ACKERMANN:
            for iq in step.consumed:
                current.remove(iq)
            assert step.subst is not None
            name, value = step.subst
            current = [
                Inequality(
                    substitute(iq.lhs, name, value),
                    substitute(iq.rhs, name, value),
                )
                for iq in current
            ]
        else:
            k = current.index(step.consumed[0])
            current[k : k + 1] = list(step.produced)
    return current
