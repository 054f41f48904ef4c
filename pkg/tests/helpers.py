"""Random formula builders used by several test modules."""

from __future__ import annotations

import random

from alba.syntax import (
    BOT,
    TOP,
    And,
    BDiam,
    Box,
    CoNom,
    Formula,
    Imp,
    Nom,
    Or,
    Prop,
)

_PROPS = ("p", "q", "r")
_NOMS = ("i0", "i1", "i2")
_CONOMS = ("m0", "m1", "m2")


def random_pure_formula(rng: random.Random, depth: int = 4) -> Formula:
    """A random formula with nominals and conominals but no propositional
    variables, over the full connective set including bottom and the
    backward diamond."""
    if depth <= 0 or rng.random() < 0.25:
        kind = rng.randrange(4)
        if kind == 0:
            return TOP
        if kind == 1:
            return BOT
        if kind == 2:
            return Nom(rng.choice(_NOMS))
        return CoNom(rng.choice(_CONOMS))
    kind = rng.randrange(5)
    if kind == 0:
        return And(random_pure_formula(rng, depth - 1), random_pure_formula(rng, depth - 1))
    if kind == 1:
        return Or(random_pure_formula(rng, depth - 1), random_pure_formula(rng, depth - 1))
    if kind == 2:
        return Imp(random_pure_formula(rng, depth - 1), random_pure_formula(rng, depth - 1))
    if kind == 3:
        return Box(random_pure_formula(rng, depth - 1))
    return BDiam(random_pure_formula(rng, depth - 1))


def random_any_formula(rng: random.Random, depth: int = 5) -> Formula:
    """A random formula over every constructor, including propositional
    variables; used for print/parse round-trips."""
    if depth <= 0 or rng.random() < 0.2:
        kind = rng.randrange(5)
        if kind == 0:
            return TOP
        if kind == 1:
            return BOT
        if kind == 2:
            return Prop(rng.choice(_PROPS))
        if kind == 3:
            return Nom(rng.choice(_NOMS))
        return CoNom(rng.choice(_CONOMS))
    kind = rng.randrange(5)
    if kind == 0:
        return And(random_any_formula(rng, depth - 1), random_any_formula(rng, depth - 1))
    if kind == 1:
        return Or(random_any_formula(rng, depth - 1), random_any_formula(rng, depth - 1))
    if kind == 2:
        return Imp(random_any_formula(rng, depth - 1), random_any_formula(rng, depth - 1))
    if kind == 3:
        return Box(random_any_formula(rng, depth - 1))
    return BDiam(random_any_formula(rng, depth - 1))
