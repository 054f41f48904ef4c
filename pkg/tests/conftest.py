"""Shared fixtures: deterministic random corpora of certified inequalities."""

from __future__ import annotations

import os
import random

import pytest

from alba.generator import random_inductive

SEED = int(os.environ.get("ALBA_SEED", "20250816"))


@pytest.fixture(scope="session")
def corpus200():
    """200 random certified inequalities, up to 3 variables and depth 4."""
    rng = random.Random(SEED)
    return [random_inductive(rng, max_vars=3, max_depth=4) for _ in range(200)]


@pytest.fixture(scope="session")
def corpus50():
    """50 smaller certified inequalities, up to 2 variables and depth 3."""
    rng = random.Random(SEED + 1)
    return [random_inductive(rng, max_vars=2, max_depth=3) for _ in range(50)]
