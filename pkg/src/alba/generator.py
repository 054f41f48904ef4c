"""Random inequalities that carry the inductive shape by construction.

The generator fixes a variable set and a shuffled order over it, then
only ever lets an implication antecedent use variables strictly earlier
in the shuffle than the block's main variable, so the collected
dependence constraints are acyclic no matter which subsets appear.
Every disjunct of the antecedent receives one PIA block per variable,
which covers every residual: whatever the successor side mentions, the
paired disjunct supplies a block with that main variable.

The construction is deliberately independent of the recognizer in
classify.py; tests feed its output through check_inductive and through
the full pipeline, so agreement between the two is evidence, not
circularity.
"""
from __future__ import annotations

import random
from functools import reduce

from .syntax import (
    And,
    Box,
    Formula,
    Imp,
    Inequality,
    Or,
    Prop,
    TOP,
)

_NAMES = ("p", "q", "r", "s", "u", "v")


def _pos(rng: random.Random, allowed: list[str], depth: int) -> Formula:
    """A positive formula over `allowed` (plus T)."""
    if depth <= 0 or rng.random() < 0.35:
        if allowed and rng.random() < 0.75:
            return Prop(rng.choice(allowed))
        return TOP
    r = rng.random()
    if r < 0.4:
        return Box(_pos(rng, allowed, depth - 1))
    if r < 0.7:
        return And(_pos(rng, allowed, depth - 1), _pos(rng, allowed, depth - 1))
    return Or(_pos(rng, allowed, depth - 1), _pos(rng, allowed, depth - 1))


def _pia(rng: random.Random, main: str, lower: list[str], depth: int) -> Formula:
    """A PIA block with the given main variable on its right spine."""
    if depth <= 0 or rng.random() < 0.3:
        return Prop(main)
    if rng.random() < 0.55:
        return Box(_pia(rng, main, lower, depth - 1))
    return Imp(
        _pos(rng, lower, depth - 1), _pia(rng, main, lower, depth - 1)
    )


def _pia_top(rng: random.Random, allowed: list[str], depth: int) -> Formula:
    """A PIA block whose spine ends in T; it constrains nothing."""
    if depth <= 0 or rng.random() < 0.4:
        return TOP
    if rng.random() < 0.6:
        return Box(_pia_top(rng, allowed, depth - 1))
    return Imp(_pos(rng, allowed, depth - 1), _pia_top(rng, allowed, depth - 1))


def _suc(
    rng: random.Random, names: list[str], lower: dict[str, list[str]], depth: int
) -> Formula:
    """A successor-grammar formula over `names`."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.8:
            return Prop(rng.choice(names))
        return TOP
    r = rng.random()
    if r < 0.3:
        return Box(_suc(rng, names, lower, depth - 1))
    if r < 0.45:
        return And(
            _suc(rng, names, lower, depth - 1), _suc(rng, names, lower, depth - 1)
        )
    if r < 0.6:
        return Or(
            _suc(rng, names, lower, depth - 1), _suc(rng, names, lower, depth - 1)
        )
    main = rng.choice(names)
    block = _pia(rng, main, lower[main], depth - 1)
    return Imp(block, _suc(rng, names, lower, depth - 1))


def _spine_ends_in(f: Formula, name: str) -> bool:
    while isinstance(f, (Box, Imp)):
        f = f.body if isinstance(f, Box) else f.right
    return isinstance(f, Prop) and f.name == name


def random_inductive(
    rng: random.Random, max_vars: int = 3, max_depth: int = 4
) -> Inequality:
    """One random inequality of certified shape, desk scale."""
    nvars = rng.randint(1, max_vars)
    names = list(_NAMES[:nvars])
    shuffled = names[:]
    rng.shuffle(shuffled)
    lower = {v: shuffled[:k] for k, v in enumerate(shuffled)}

    disjuncts: list[Formula] = []
    for _ in range(rng.randint(1, 2)):
        blocks = [_pia(rng, v, lower[v], rng.randint(0, max_depth - 1)) for v in names]
        if rng.random() < 0.25:
            blocks.append(_pia_top(rng, names, rng.randint(0, max_depth - 1)))
        rng.shuffle(blocks)
        for v in names:
            assert any(_spine_ends_in(b, v) for b in blocks)
        disjuncts.append(reduce(And, blocks))
    lhs = reduce(Or, disjuncts)
    rhs = _suc(rng, names, lower, rng.randint(1, max_depth))
    return Inequality(lhs, rhs)
