from __future__ import annotations

import json

import pytest

from conftest import Z3_ROWS
from qderiv.cli import run
from qderiv.reportio import parse_cayley, survey_from_json

Z3_TEXT = "3\n0 1 2\n1 2 0\n2 0 1\n"


@pytest.fixture
def z3_file(tmp_path):
    path = tmp_path / "z3.cayley"
    path.write_text(Z3_TEXT)
    return str(path)


def test_validate_ok(z3_file, capsys):
    assert run(["validate", z3_file]) == 0
    assert "order 3" in capsys.readouterr().out


def test_validate_bad_table(tmp_path, capsys):
    path = tmp_path / "bad.cayley"
    path.write_text("2\n0 0\n1 1\n")
    assert run(["validate", str(path)]) == 1
    assert "error" in capsys.readouterr().err


def test_derive_reproduces_example_table(z3_file, capsys):
    code = run(["derive", z3_file, "--a", "0", "--spec", "23:L,Pi,E", "--convention", "A"])
    assert code == 0
    assert capsys.readouterr().out == "3\n0 2 1\n2 1 0\n1 0 2\n"


def test_derive_rejects_out_of_range_element(z3_file, capsys):
    assert run(["derive", z3_file, "--a", "5", "--spec", "23:L,Pi,E"]) == 1
    assert "out of range" in capsys.readouterr().err


def test_parastrophe_emits_valid_table(z3_file, capsys):
    assert run(["parastrophe", z3_file, "--sigma", "23"]) == 0
    out = capsys.readouterr().out
    assert parse_cayley(out).mul_table == ((0, 1, 2), (2, 0, 1), (1, 2, 0))


def test_units_output(z3_file, capsys):
    assert run(["units", z3_file]) == 0
    assert capsys.readouterr().out.strip() == "f=0 e=0 s=-"


def test_enumerate_count_only(capsys):
    assert run(["enumerate", "--order", "4", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "576"
    assert run(["enumerate", "--order", "5", "--reduced", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "56"


def test_enumerate_stream_parses_back(capsys):
    assert run(["enumerate", "--order", "3"]) == 0
    docs = capsys.readouterr().out.strip().split("\n\n")
    assert len(docs) == 12
    assert parse_cayley(docs[0] + "\n").mul_table == Z3_ROWS


def test_enumerate_order_too_large(capsys):
    assert run(["enumerate", "--order", "6", "--count-only"]) == 1
    assert "bound" in capsys.readouterr().err


def test_certify_exit_codes(capsys):
    assert run(["certify", "--case", "23:L,Pi,E/f", "--max-order", "3"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["table"] == [list(r) for r in Z3_ROWS]
    assert doc["a"] == 0
    assert run(["certify", "--case", "e:L,E,L/f", "--max-order", "4"]) == 0
    assert "no counterexample" in capsys.readouterr().out


def test_certify_bad_case_token(capsys):
    assert run(["certify", "--case", "nonsense"]) == 1
    assert "error" in capsys.readouterr().err


def test_survey_and_diff_paper(tmp_path, capsys):
    out = tmp_path / "survey.json"
    assert run(["survey", "--corpus", "exhaustive:3", "--convention", "A", "--out", str(out)]) == 0
    result = survey_from_json(out.read_text())
    assert len(result.statuses) == 1944

    report = tmp_path / "diff.md"
    assert run(["diff-paper", str(out), "--out", str(report)]) == 0
    text = report.read_text()
    assert "Agreement by convention" in text
    assert text.count("| args=") == 8

    assert run(["diff-paper", str(out), "--skip-convention-scan", "--out", str(report)]) == 0
    assert "Agreement by convention" not in report.read_text()


def test_survey_jobs_do_not_change_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["survey", "--corpus", "exhaustive:3", "--out", str(a), "--jobs", "1"]) == 0
    assert run(["survey", "--corpus", "exhaustive:3", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_example(capsys):
    assert run(["verify", "example"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4 and "FAIL" not in out


def test_verify_lemma_small_corpus(capsys):
    assert run(["verify", "lemma", "--corpus", "exhaustive:3"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_table1_small_corpus(capsys):
    assert run(["verify", "table1", "--corpus", "random:5:seed=0:count=5"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_theorem_prints_per_convention_lines(capsys):
    assert run(["verify", "theorem", "--claim", "1", "--corpus", "exhaustive:3"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("claim 1")]
    assert len(lines) == 8


def test_usage_error_exit_code(capsys):
    assert run(["derive", "/nonexistent", "--a", "0", "--spec", "bad spec"]) == 1
    assert run(["no-such-command"]) == 1
