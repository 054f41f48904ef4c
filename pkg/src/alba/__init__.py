"""Correspondence engine for inductive modal inequalities.

Parses inequalities in the box fragment with implication, recognizes
inductive shape, eliminates propositional variables by an Ackermann-style
rewrite pipeline, translates the resulting pure quasi-inequalities to a
first-order frame condition, and can verify the correspondence on all
finite frames up to a bound.
"""
from .classify import InductiveCertificate, InductiveFailure, check_inductive
from .engine import AlbaResult, System, TraceStep, run
from .fol import FOSentence, fo_show, simplify, st_formula, st_quasi
from .semantics import FiniteFrame, Model, Valuation, correspondence_check, frame_valid
from .syntax import (
    Formula,
    Inequality,
    ParseError,
    QuasiInequality,
    parse_formula,
    parse_inequality,
    show,
)

__all__ = [
    "AlbaResult",
    "FOSentence",
    "FiniteFrame",
    "Formula",
    "InductiveCertificate",
    "InductiveFailure",
    "Inequality",
    "Model",
    "ParseError",
    "QuasiInequality",
    "System",
    "TraceStep",
    "Valuation",
    "check_inductive",
    "correspondence_check",
    "fo_show",
    "frame_valid",
    "parse_formula",
    "parse_inequality",
    "run",
    "show",
    "simplify",
    "st_formula",
    "st_quasi",
]

__version__ = "0.1.0"
