"""First-order side: translation, printing, simplification, JSON."""

from __future__ import annotations

import pytest

from alba.engine import run
from alba.fol import (
    FO_TRUE,
    Const,
    Eq,
    Exists,
    FOAnd,
    FOImp,
    FOOr,
    FOSentence,
    Forall,
    Neq,
    NonPureInput,
    Not,
    Rel,
    Var,
    conjoin,
    fo_const_names,
    fo_free_vars,
    fo_from_json,
    fo_show,
    fo_subst,
    fo_to_json,
    sentence_from_json,
    sentence_to_json,
    simplify,
    st_formula,
    st_quasi,
)
from alba.semantics import all_frames, sentence_valid
from alba.syntax import parse_formula, parse_inequality


ST_GOLDENS = [
    ("i0", "x0 = i0"),
    ("m1", "x0 != m1"),
    ("T", "true"),
    ("F", "false"),
    ("box i0", "A y0. (R(x0,y0) -> y0 = i0)"),
    ("bdiam i0", "E y0. (R(y0,x0) & y0 = i0)"),
    ("i0 /\\ m0 \\/ (i1 -> m1)", "x0 = i0 & x0 != m0 | (x0 = i1 -> x0 != m1)"),
    ("box box i0", "A y0. (R(x0,y0) -> (A y1. (R(y0,y1) -> y1 = i0)))"),
]


@pytest.mark.parametrize("text,expected", ST_GOLDENS)
def test_standard_translation_clauses(text, expected):
    assert fo_show(st_formula(parse_formula(text), point="x0")) == expected


def test_standard_translation_rejects_variables():
    with pytest.raises(NonPureInput, match="variable p has no first-order translation"):
        st_formula(parse_formula("box p"))


PRINT_GOLDENS = [
    (
        FOImp(Rel(Var("x"), Var("y")), FOImp(Eq(Var("x"), Var("y")), Neq(Var("x"), Var("z")))),
        "R(x,y) -> x = y -> x != z",
    ),
    (
        FOImp(FOImp(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y"))), Neq(Var("x"), Var("z"))),
        "(R(x,y) -> x = y) -> x != z",
    ),
    (Not(FOAnd(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y")))), "~(R(x,y) & x = y)"),
    (
        FOOr(FOAnd(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y"))), Neq(Var("x"), Var("z"))),
        "R(x,y) & x = y | x != z",
    ),
    (
        FOAnd(FOOr(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y"))), Neq(Var("x"), Var("z"))),
        "(R(x,y) | x = y) & x != z",
    ),
    (Not(Rel(Var("x"), Var("y"))), "~R(x,y)"),
    (Forall("y", FOImp(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y")))), "A y. (R(x,y) -> x = y)"),
    (Exists("y", FOAnd(Rel(Var("x"), Var("y")), Eq(Var("x"), Var("y")))), "E y. (R(x,y) & x = y)"),
]


@pytest.mark.parametrize("formula,expected", PRINT_GOLDENS)
def test_printer_goldens(formula, expected):
    assert fo_show(formula) == expected


def test_sentence_printing():
    s = FOSentence(("x", "z"), FOImp(Rel(Var("x"), Var("z")), Neq(Var("x"), Var("z"))))
    assert str(s) == "A x. A z. (R(x,z) -> x != z)"
    assert str(FOSentence((), FO_TRUE)) == "true"


def test_free_vars_and_substitution():
    f = Forall("y", FOImp(Rel(Var("x"), Var("y")), Eq(Var("y"), Var("z"))))
    assert fo_free_vars(f) == {"x", "z"}
    assert fo_show(fo_subst(f, "z", Var("w"))) == "A y. (R(x,y) -> y = w)"
    # A bound occurrence shadows the substitution.
    assert fo_subst(f, "y", Var("w")) == f
    assert fo_const_names(Eq(Var("x"), Const("i0"))) == {"i0"}


def test_conjoin():
    assert str(conjoin([])) == "true"
    single = FOSentence(("x",), Rel(Var("x"), Var("x")))
    assert conjoin([single]) is single
    pair = conjoin(
        [
            FOSentence(("x", "y"), Rel(Var("x"), Var("y"))),
            FOSentence(("x", "z"), Neq(Var("x"), Var("z"))),
        ]
    )
    assert str(pair) == "(A x. A y. R(x,y)) & (A x. A z. x != z)"


SIMPLIFY_GOLDENS = [
    ("T <= box(box p -> p)", "A i0. A i1. (R(i0,i1) -> R(i1,i1))"),
    ("box p <= p", "A i0. R(i0,i0)"),
    ("box p <= box box p", "A i0. A m1. A m2. (R(i0,m1) & R(m1,m2) -> R(i0,m2))"),
    ("p <= box p", "A i0. A m1. (R(i0,m1) -> i0 = m1)"),
    ("p <= T", "true"),
]


@pytest.mark.parametrize("text,expected", SIMPLIFY_GOLDENS)
def test_simplified_correspondents(text, expected):
    result = run(parse_inequality(text))
    assert result.ok
    assert len(result.quasis) == 1
    assert str(simplify(st_quasi(result.quasis[0]))) == expected


def test_translation_prefix_is_sorted_and_const_free():
    result = run(parse_inequality("box p /\\ box q <= box(p /\\ q)"))
    for quasi in result.quasis:
        sentence = st_quasi(quasi)
        assert fo_const_names(sentence.matrix) == set()
        names = list(sentence.variables)
        assert len(names) == len(set(names))
        nominals = [n for n in names if n.startswith("i")]
        conominals = [n for n in names if n.startswith("m")]
        assert names == nominals + conominals
        assert fo_free_vars(sentence.matrix) <= set(names)


def test_simplify_preserves_truth_on_small_frames(corpus50):
    frames = all_frames(2)
    for ineq in corpus50[:20]:
        result = run(ineq)
        assert result.ok
        for quasi in result.quasis:
            raw = st_quasi(quasi)
            slim = simplify(raw)
            for frame in frames:
                assert sentence_valid(frame, raw) == sentence_valid(frame, slim), (
                    f"{ineq} | {raw} | {slim} | {frame}"
                )


def test_simplify_is_idempotent(corpus50):
    for ineq in corpus50[:20]:
        result = run(ineq)
        for quasi in result.quasis:
            slim = simplify(st_quasi(quasi))
            assert simplify(slim) == slim


def test_json_round_trip_for_sentences(corpus50):
    for ineq in corpus50[:10]:
        result = run(ineq)
        for quasi in result.quasis:
            for sentence in (st_quasi(quasi), simplify(st_quasi(quasi))):
                blob = sentence_to_json(sentence)
                assert sentence_from_json(blob) == sentence

    matrix = Forall("y", FOImp(Rel(Var("x"), Var("y")), Eq(Var("y"), Const("c"))))
    assert fo_from_json(fo_to_json(matrix)) == matrix
