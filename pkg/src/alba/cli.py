"""Command line front end.

Reads one inequality (argument) or many (--file, one per line, blank
lines and #-comments skipped), runs the pipeline, and prints the frame
condition, the quasi-inequalities, the rewrite trace, or all three, as
text or JSON.  Output is deterministic: same input, same bytes.

Exit codes: 0 success, 1 the reduction got stuck (or the shape check
failed under --check-inductive), 2 bad input, 3 a verification
counterexample was found.  With --file the worst code wins.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .classify import InductiveFailure, check_inductive
from .engine import AlbaResult, run
from .fol import FOSentence, sentence_to_json, simplify, st_quasi
from .semantics import correspondence_check
from .syntax import Inequality, ParseError, is_base, parse_inequality

EXIT_OK = 0
EXIT_STUCK = 1
EXIT_BAD_INPUT = 2
EXIT_COUNTEREXAMPLE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alba",
        description=(
            "Eliminate propositional variables from a modal inequality and "
            "print the equivalent first-order frame condition."
        ),
    )
    parser.add_argument(
        "inequality",
        nargs="?",
        help="an inequality such as 'box p <= p' (T, F, /\\, \\/, ->, box)",
    )
    parser.add_argument(
        "--file",
        help="read inequalities from a file, one per line; # starts a comment",
    )
    parser.add_argument(
        "--output",
        choices=("fo", "quasi", "trace", "all"),
        default="fo",
        help="what to print (default: fo)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )
    parser.add_argument(
        "--verify",
        type=int,
        metavar="N",
        help="check the result against all frames with up to N worlds",
    )
    parser.add_argument(
        "--no-simplify",
        action="store_true",
        help="print the raw translation without simplification",
    )
    parser.add_argument(
        "--check-inductive",
        action="store_true",
        help="only report whether the inequality has inductive shape",
    )
    return parser


@dataclass
class Outcome:
    code: int
    lines: list[str]
    data: dict


def _certificate_outcome(ineq: Inequality) -> Outcome:
    cert = check_inductive(ineq)
    data = {"input": str(ineq), **cert.to_json()}
    if isinstance(cert, InductiveFailure):
        lines = [f"not inductive [{cert.condition}]: {cert.reason}"]
        return Outcome(EXIT_STUCK, lines, data)
    if cert.omega.edges:
        edges = ", ".join(f"{q} < {p}" for q, p in sorted(cert.omega.edges))
        lines = [f"inductive (order: {edges})"]
    else:
        lines = ["inductive (order empty)"]
    return Outcome(EXIT_OK, lines, data)


def _trace_lines(result: AlbaResult) -> list[str]:
    lines: list[str] = []
    for k, residual in enumerate(result.residuals):
        if k >= len(result.traces):
            break
        lines.append(f"residual {k + 1}: {residual}")
        start = "; ".join(str(iq) for iq in result.initial_systems[k])
        lines.append(f"  start: {start}")
        for step in result.traces[k]:
            consumed = "; ".join(str(iq) for iq in step.consumed)
            produced = "; ".join(str(iq) for iq in step.produced)
            line = f"  {step.rule}: {consumed} => {produced}"
            if step.subst is not None:
                name, value = step.subst
                line += f" [{name} := {value}]"
            lines.append(line)
    return lines


def _process(ineq: Inequality, args: argparse.Namespace) -> Outcome:
    if args.check_inductive:
        return _certificate_outcome(ineq)

    result = run(ineq)
    data: dict = {"input": str(ineq), **result.to_json()}
    lines: list[str] = []

    if args.output in ("trace", "all"):
        lines += _trace_lines(result)

    if not result.ok:
        assert result.failure is not None
        lines.append(f"failure: {result.failure.describe()}")
        return Outcome(EXIT_STUCK, lines, data)

    sentences: list[FOSentence] = [st_quasi(q) for q in result.quasis]
    if not args.no_simplify:
        sentences = [simplify(s) for s in sentences]
    data["fo"] = [str(s) for s in sentences]
    data["fo_ast"] = [sentence_to_json(s) for s in sentences]

    if args.output in ("quasi", "all"):
        lines += [f"quasi: {q}" for q in result.quasis]
    if args.output in ("fo", "all"):
        lines += [f"fo: {s}" if args.output == "all" else str(s) for s in sentences]

    if args.verify is not None:
        report = correspondence_check(ineq, sentences, max_n=args.verify)
        data["verify"] = {
            "agree": report.agree,
            "frames_checked": report.frames_checked,
            "max_n": report.max_n,
            "counterexamples": [str(c) for c in report.counterexamples],
        }
        if report.agree:
            lines.append(f"verified: {report}")
        else:
            lines.append(f"verify counterexample: {report.counterexamples[0]}")
            return Outcome(EXIT_COUNTEREXAMPLE, lines, data)

    return Outcome(EXIT_OK, lines, data)


def _parse_line(text: str, args: argparse.Namespace) -> Outcome:
    try:
        ineq = parse_inequality(text)
    except ParseError as exc:
        return Outcome(
            EXIT_BAD_INPUT,
            [f"parse error: {exc}"],
            {"input": text, "error": str(exc)},
        )
    if args.verify is not None and not (is_base(ineq.lhs) and is_base(ineq.rhs)):
        message = "verify needs a base-language inequality (no i/m/bdiam/F)"
        return Outcome(EXIT_BAD_INPUT, [message], {"input": text, "error": message})
    return _process(ineq, args)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if (args.inequality is None) == (args.file is None):
        print("give exactly one inequality or --file", file=sys.stderr)
        return EXIT_BAD_INPUT

    if args.inequality is not None:
        texts = [args.inequality]
    else:
        try:
            with open(args.file, encoding="utf-8") as handle:
                raw = handle.readlines()
        except OSError as exc:
            print(f"cannot read {args.file}: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
        texts = [
            line.strip()
            for line in raw
            if line.strip() and not line.strip().startswith("#")
        ]

    outcomes = [_parse_line(text, args) for text in texts]

    if args.format == "json":
        payload = [o.data for o in outcomes]
        print(json.dumps(payload[0] if args.file is None else payload, indent=2))
    else:
        blocks: list[str] = []
        for text, outcome in zip(texts, outcomes):
            body = "\n".join(outcome.lines)
            if args.file is not None:
                blocks.append(f"-- {text}\n{body}" if body else f"-- {text}")
            else:
                blocks.append(body)
        print("\n".join(blocks))

    return max(o.code for o in outcomes) if outcomes else EXIT_OK


def main_entry(argv: list[str] | None = None) -> None:
    raise SystemExit(main(argv))
