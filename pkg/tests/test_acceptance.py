"""Acceptance gate: one test per shipped guarantee, at stated tolerances.

Run with `pytest -v tests/test_acceptance.py` to get one pass/fail line
per criterion.
"""

from __future__ import annotations

import random
import time

from alba.engine import replay_steps, run
from alba.fol import FOImp, FOSentence, Rel, Var, simplify, st_formula, st_quasi
from alba.semantics import (
    Model,
    Valuation,
    all_frames,
    correspondence_check,
    eval_fo_formula,
    eval_formula,
    projection_profile,
    sentence_valid,
)
from alba.syntax import is_pure, parse_formula, parse_inequality, show

from conftest import SEED
from helpers import random_pure_formula

REFLEXIVE_SUCCESSORS = FOSentence(
    ("x", "y"),
    FOImp(Rel(Var("x"), Var("y")), Rel(Var("y"), Var("y"))),
)


def test_criterion_1_golden_end_to_end():
    started = time.perf_counter()
    result = run(parse_inequality("T <= box(box p -> p)"))
    assert result.ok
    assert len(result.quasis) == 1
    quasi = result.quasis[0]
    assert [str(a) for a in quasi.antecedents] == [
        "box m1 <= m0",
        "i1 -> m2 <= m1",
        "bdiam i1 <= m2",
    ]
    assert str(quasi.conclusion) == "i0 <= m0"
    sentence = simplify(st_quasi(quasi))
    assert str(sentence) == "A i0. A i1. (R(i0,i1) -> R(i1,i1))"
    elapsed = time.perf_counter() - started
    for frame in all_frames(3):
        assert sentence_valid(frame, sentence) == sentence_valid(
            frame, REFLEXIVE_SUCCESSORS
        ), str(frame)
    assert elapsed < 0.1, f"pipeline took {elapsed:.3f}s"


def test_criterion_2_classical_correspondents():
    started = time.perf_counter()
    for text in ["box p <= p", "box p <= box box p", "p <= box p"]:
        ineq = parse_inequality(text)
        result = run(ineq)
        assert result.ok, text
        sentences = [simplify(st_quasi(q)) for q in result.quasis]
        report = correspondence_check(ineq, sentences, max_n=3)
        assert report.agree, f"{text}: {report}"
        assert report.frames_checked == 530
        assert report.disagreements == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"checks took {elapsed:.3f}s"


def test_criterion_3_success_on_random_certified_inputs(corpus200):
    assert len(corpus200) == 200
    worst = 0.0
    for ineq in corpus200:
        started = time.perf_counter()
        result = run(ineq)
        elapsed = time.perf_counter() - started
        worst = max(worst, elapsed)
        assert result.ok, str(ineq)
        for quasi in result.quasis:
            for part in quasi.antecedents:
                assert is_pure(part.lhs) and is_pure(part.rhs), str(ineq)
            assert is_pure(quasi.conclusion.lhs) and is_pure(quasi.conclusion.rhs)
        assert elapsed < 1.0, f"{ineq} took {elapsed:.3f}s"
    assert worst < 1.0


def test_criterion_4_correspondence_on_two_variable_corpus(corpus50):
    assert len(corpus50) == 50
    started = time.perf_counter()
    for ineq in corpus50:
        result = run(ineq)
        assert result.ok, str(ineq)
        sentences = [simplify(st_quasi(q)) for q in result.quasis]
        report = correspondence_check(ineq, sentences, max_n=3)
        assert report.agree, f"{ineq}: {report}; first {report.counterexamples[:1]}"
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"corpus check took {elapsed:.3f}s"


def test_criterion_5_rule_steps_preserve_endpoint_profiles(corpus200):
    started = time.perf_counter()
    frames = list(all_frames(2))
    steps_checked = 0
    for ineq in corpus200[:20]:
        result = run(ineq)
        assert result.ok, str(ineq)
        for k, trace in enumerate(result.traces):
            initial = list(result.initial_systems[k])
            for frame in frames:
                profile = projection_profile(frame, initial)
                for cut in range(1, len(trace) + 1):
                    system = replay_steps(initial, list(trace[:cut]))
                    assert projection_profile(frame, system) == profile, (
                        f"{ineq} residual {k} rule {trace[cut - 1].rule} on {frame}"
                    )
            steps_checked += len(trace)
    elapsed = time.perf_counter() - started
    assert steps_checked > 0
    assert elapsed < 60.0, f"profile checks took {elapsed:.3f}s"


def test_criterion_6_translation_matches_evaluation():
    from alba.semantics import FiniteFrame

    rng = random.Random(SEED + 6)
    checked = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        edges = frozenset(
            (a, b) for a in range(n) for b in range(n) if rng.random() < 0.4
        )
        frame = FiniteFrame(n, edges)
        f = random_pure_formula(rng, depth=4)
        noms = {name: rng.randrange(n) for name in ("i0", "i1", "i2")}
        conoms = {name: rng.randrange(n) for name in ("m0", "m1", "m2")}
        model = Model(frame, Valuation(props={}, noms=noms, conoms=conoms))
        matrix = st_formula(f, point="x0")
        for w in range(n):
            assignment = {"x0": w, **noms, **conoms}
            assert eval_formula(model, w, f) == eval_fo_formula(
                frame, matrix, assignment
            ), f"{show(f)} at world {w} on {frame}"
        checked += 1
    assert checked == 500


def test_criterion_7_parser_round_trip():
    from helpers import random_any_formula

    rng = random.Random(SEED + 7)
    for _ in range(1000):
        f = random_any_formula(rng, depth=5)
        assert parse_formula(show(f)) == f, show(f)
