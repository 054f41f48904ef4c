"""Command-line interface: outputs, formats, exit codes."""

from __future__ import annotations

import json

import pytest

import alba.cli as cli
from alba.semantics import CorrespondenceReport, Counterexample, FiniteFrame


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_default_output_is_the_simplified_sentence(capsys):
    code, out, err = run_cli(capsys, "box p <= p")
    assert code == cli.EXIT_OK == 0
    assert out == "A i0. R(i0,i0)\n"
    assert err == ""


def test_output_all_shows_trace_quasi_and_sentence(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--output", "all")
    assert code == 0
    assert out.splitlines() == [
        "residual 1: box p <= p",
        "  start: i0 <= box p; p <= m0",
        "  residuate-box: i0 <= box p => bdiam i0 <= p",
        "  ackermann: bdiam i0 <= p => bdiam i0 <= m0 [p := bdiam i0]",
        "quasi: bdiam i0 <= m0 => i0 <= m0",
        "fo: A i0. R(i0,i0)",
    ]


def test_output_quasi_only(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--output", "quasi")
    assert code == 0
    assert out == "quasi: bdiam i0 <= m0 => i0 <= m0\n"


def test_no_simplify_prints_raw_translation(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--no-simplify")
    assert code == 0
    assert out == (
        "A i0. A m0. ((A x0. ((E y0. (R(y0,x0) & y0 = i0)) -> x0 != m0)) "
        "-> (A x1. (x1 = i0 -> x1 != m0)))\n"
    )


def test_stuck_input_exits_one(capsys):
    code, out, _ = run_cli(capsys, "p \\/ q <= p /\\ q")
    assert code == cli.EXIT_STUCK == 1
    assert out == (
        "failure: variable p not eliminable: "
        "no inequality of the form t <= p supplies a minimal valuation\n"
    )


def test_parse_error_exits_two(capsys):
    code, out, _ = run_cli(capsys, "p <=")
    assert code == cli.EXIT_BAD_INPUT == 2
    assert out == "parse error: expected a formula, found 'end of input' (at column 4)\n"


def test_missing_and_double_input_exit_two(capsys, tmp_path):
    code, _, err = run_cli(capsys)
    assert code == 2
    assert "give exactly one inequality or --file" in err
    path = tmp_path / "batch.txt"
    path.write_text("box p <= p\n")
    code, _, err = run_cli(capsys, "p <= q", "--file", str(path))
    assert code == 2
    assert "give exactly one inequality or --file" in err


def test_verify_success(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--verify", "2")
    assert code == 0
    assert out.splitlines() == [
        "A i0. R(i0,i0)",
        "verified: inequality and sentence agree on all 18 frames with up to 2 worlds",
    ]


def test_verify_rejects_expanded_language_input(capsys):
    code, out, _ = run_cli(capsys, "box i0 <= p", "--verify", "2")
    assert code == 2
    assert out == "verify needs a base-language inequality (no i/m/bdiam/F)\n"


def test_verify_counterexample_exits_three(capsys, monkeypatch):
    frame = FiniteFrame(1, frozenset())
    fake = CorrespondenceReport(
        agree=False,
        frames_checked=18,
        counterexamples=(Counterexample(frame, True, False),),
        max_n=2,
        disagreements=1,
    )
    monkeypatch.setattr(cli, "correspondence_check", lambda *a, **k: fake)
    code, out, _ = run_cli(capsys, "box p <= p", "--verify", "2")
    assert code == cli.EXIT_COUNTEREXAMPLE == 3
    assert out.splitlines()[-1] == (
        "verify counterexample: frame(n=1): inequality holds, sentence fails"
    )


def test_check_inductive_accept(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--check-inductive")
    assert code == 0
    assert out == "inductive (order empty)\n"
    code, out, _ = run_cli(capsys, "box(q -> p) /\\ box q <= p", "--check-inductive")
    assert code == 0
    assert out == "inductive (order: q < p)\n"


def test_check_inductive_reject(capsys):
    code, out, _ = run_cli(capsys, "p \\/ q <= p /\\ q", "--check-inductive")
    assert code == 1
    assert out == (
        "not inductive [coverage]: variable p heads no PIA block in the "
        "residual q <= p, so no minimal valuation for it exists there\n"
    )


def test_file_mode_headers_and_max_severity(capsys, tmp_path):
    path = tmp_path / "batch.txt"
    path.write_text("box p <= p\n# comment\n\np <= box p\nbad <=\n")
    code, out, _ = run_cli(capsys, "--file", str(path))
    assert code == 2
    assert out.splitlines() == [
        "-- box p <= p",
        "A i0. R(i0,i0)",
        "-- p <= box p",
        "A i0. A m1. (R(i0,m1) -> i0 = m1)",
        "-- bad <=",
        "parse error: expected a formula, found 'end of input' (at column 6)",
    ]


def test_file_mode_stuck_only_exits_one(capsys, tmp_path):
    path = tmp_path / "batch.txt"
    path.write_text("box p <= p\np \\/ q <= p /\\ q\n")
    code, out, _ = run_cli(capsys, "--file", str(path))
    assert code == 1


def test_json_single_object(capsys):
    code, out, _ = run_cli(capsys, "T <= box(box p -> p)", "--format", "json", "--output", "all")
    assert code == 0
    data = json.loads(out)
    assert sorted(data) == ["fo", "fo_ast", "input", "quasis", "residuals", "status", "traces"]
    assert data["input"] == "T <= box(box p -> p)"
    assert data["status"] == "success"
    assert data["fo"] == ["A i0. A i1. (R(i0,i1) -> R(i1,i1))"]
    assert data["quasis"] == [
        "box m1 <= m0 & i1 -> m2 <= m1 & bdiam i1 <= m2 => i0 <= m0"
    ]
    assert [s["rule"] for s in data["traces"][0]] == [
        "delete-top",
        "approx-box",
        "approx-imp",
        "residuate-box",
        "ackermann",
    ]
    assert data["fo_ast"][0]["variables"] == ["i0", "i1"]


def test_json_failure_object(capsys):
    code, out, _ = run_cli(capsys, "p \\/ q <= p /\\ q", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "failure"
    assert data["failure"] == (
        "variable p not eliminable: "
        "no inequality of the form t <= p supplies a minimal valuation"
    )


def test_json_file_mode_is_an_array(capsys, tmp_path):
    path = tmp_path / "batch.txt"
    path.write_text("box p <= p\nbad <=\n")
    code, out, _ = run_cli(capsys, "--file", str(path), "--format", "json")
    assert code == 2
    data = json.loads(out)
    assert isinstance(data, list) and len(data) == 2
    assert data[0]["status"] == "success"
    assert data[1] == {
        "input": "bad <=",
        "error": "expected a formula, found 'end of input' (at column 6)",
    }


def test_json_output_is_deterministic(capsys):
    args = ("T <= box(box p -> p)", "--format", "json", "--output", "all")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_verify_json_block(capsys):
    code, out, _ = run_cli(capsys, "box p <= p", "--format", "json", "--verify", "2")
    assert code == 0
    data = json.loads(out)
    assert data["verify"] == {
        "agree": True,
        "frames_checked": 18,
        "max_n": 2,
        "counterexamples": [],
    }


def test_console_entry_point_raises_system_exit():
    with pytest.raises(SystemExit) as exc:
        cli.main_entry(["box p <= p"])
    assert exc.value.code == 0
