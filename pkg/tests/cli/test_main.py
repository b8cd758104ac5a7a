"""
End-to-end tests of the ``q0u`` command through ``main(argv)``.

Verdict lines are read from stdout; stderr only carries JSON log records.
"""

import json
from pathlib import Path

import pytest

from app.cli.commands import schema as schema_command
from app.main import main

A5_SCRIPT = """\
theory demo
proof defx : "def(x_i)"
  1. "def(x_i)"  axiom A5 {x := x_i}
qed 1
"""

TAUT_SCRIPT = """\
theory demo
proof excluded : "x_o \\/ ~x_o"
  1. "x_o \\/ ~x_o"  derived taut
qed 1
"""

WRONG_SCRIPT = """\
theory demo
const c : i
proof wrong : "def(c)"
  1. "def(c)"  axiom A6 {c := c}
  2. "def(x_i)"  axiom A6 {c := c}
qed 2
"""


@pytest.fixture
def script(tmp_path):
    def write(text: str, name: str = "proofs.q0u") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestCheck:
    def test_accepts_a_kernel_proof(self, script, capsys):
        assert main(["check", script(A5_SCRIPT)]) == 0
        out = capsys.readouterr().out
        assert "defx: accepted" in out
        assert "1/1 proofs accepted" in out

    def test_derived_rules_need_extended_mode(self, script, capsys):
        assert main(["check", script(TAUT_SCRIPT)]) == 1
        out = capsys.readouterr().out
        assert "proof excluded, main step 1: rejected" in out
        assert "extended-mode rule in kernel mode" in out

    def test_extended_mode_reports_trusted_steps(self, script, capsys):
        assert main(["check", "--extended", script(TAUT_SCRIPT)]) == 0
        assert "excluded: accepted (trusted steps: 1)" in capsys.readouterr().out

    def test_imported_trusted_steps_are_listed(self, script, capsys):
        text = TAUT_SCRIPT + 'proof reuse : "x_o \\/ ~x_o"\n  1. "x_o \\/ ~x_o"  thm excluded.1\nqed 1\n'
        assert main(["check", "--extended", script(text)]) == 0
        assert "reuse: accepted (trusted theorem steps: 1)" in capsys.readouterr().out

    def test_reports_the_rejected_step(self, script, capsys):
        assert main(["check", script(WRONG_SCRIPT)]) == 1
        out = capsys.readouterr().out
        assert "proof wrong, main step 2: rejected" in out
        assert "0/1 proofs accepted" in out

    def test_syntax_error_is_a_usage_error(self, script, capsys):
        assert main(["check", script("theory demo\nproof a\n")]) == 2
        assert "error [SCRIPT_SYNTAX]: line 2" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "absent.q0u")]) == 2
        assert "error [FILE_ACCESS]" in capsys.readouterr().out

    def test_logs_go_to_stderr(self, script, capsys):
        main(["check", "--run-id", "run-42", script(A5_SCRIPT)])
        err = capsys.readouterr().err
        records = [json.loads(line) for line in err.splitlines() if line.startswith("{")]
        assert records
        assert all(record["run_id"] == "run-42" for record in records)


class TestTactic:
    def test_lemma1_script_is_checked(self, script, capsys):
        assert main(["tactic", "lemma1", "c", "--const", "c:i"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("theory tactic\nconst c : i\n")
        assert "qed 5" in out
        # the printed script is itself a valid input
        assert main(["check", script(out)]) == 0

    def test_lemma2_needs_two_operands(self, capsys):
        assert main(["tactic", "lemma2", "c", "--const", "c:i"]) == 2
        assert "error [TACTIC]" in capsys.readouterr().out

    def test_selfeq_outside_its_scope(self, capsys):
        assert main(["tactic", "selfeq", "k c", "--const", "c:i", "--const", "k:ii"]) == 2

    def test_bad_constant_declaration(self, capsys):
        assert main(["tactic", "lemma1", "c", "--const", "c"]) == 2
        assert "NAME:TYPE" in capsys.readouterr().out


class TestEval:
    @pytest.mark.parametrize(
        ("wff", "expected"),
        [
            ("p c", "T"),
            ("k c", "defined: b"),
            ("k (k c)", "undefined"),
            ("bot_i", "undefined"),
            ("def(bot_i)", "F"),
            ("T", "T"),
            ("k (k c) = k (k c)", "F"),
            ("k (k c) ~= k (k c)", "T"),
        ],
    )
    def test_values(self, model_file, capsys, wff, expected):
        assert main(["eval", str(model_file), wff]) == 0
        assert capsys.readouterr().out.splitlines()[0] == expected

    def test_assignment(self, model_file, capsys):
        assert main(["eval", str(model_file), "p x_i", "--assign", "x_i=b"]) == 0
        assert capsys.readouterr().out.strip() == "F"

    def test_missing_assignment(self, model_file, capsys):
        assert main(["eval", str(model_file), "p x_i"]) == 2
        assert "x_i" in capsys.readouterr().out

    def test_unknown_variable_in_assignment(self, model_file, capsys):
        assert main(["eval", str(model_file), "p c", "--assign", "y_i=a"]) == 2

    def test_explain(self, model_file, capsys):
        assert main(["eval", str(model_file), "p (k (k c))", "--explain"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "F"
        assert "  k (k c) : i = undefined" in lines

    def test_domain_size_cap(self, model_file, capsys):
        assert main(["eval", str(model_file), "forall f_(oii). T", "--cap", "10"]) == 2
        assert "error [DOMAIN_SIZE_CAP]" in capsys.readouterr().out


class TestValidity:
    @pytest.mark.parametrize(
        "wff",
        ["x_i = y_i => h_(oi) x_i = h_(oi) y_i", "def(x_i)", "undef(bot_i)", "c ~= c"],
    )
    def test_valid(self, capsys, wff):
        assert main(["validity", wff, "--const", "c:i"]) == 0
        assert "valid up to base size 2" in capsys.readouterr().out

    def test_counter_model(self, capsys):
        assert main(["validity", "F"]) == 1
        assert "counter-model:" in capsys.readouterr().out

    def test_counter_model_interprets_constants(self, capsys):
        assert main(["validity", "p c", "--const", "p:oi", "--const", "c:i", "--max-base", "1"]) == 1
        assert "'p': '{a -> F}'" in capsys.readouterr().out

    def test_non_formula(self, capsys):
        assert main(["validity", "c", "--const", "c:i"]) == 2


class TestReport:
    def test_pass_report(self, script, tmp_path, capsys):
        report = tmp_path / "report.json"
        args = ["check", script(A5_SCRIPT), "--report", str(report), "--run-id", "r-1"]
        assert main(args) == 0
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["command"] == "check"
        assert data["status"] == "pass"
        assert data["run_id"] == "r-1"
        assert data["proofs"][0]["label"] == "defx"

    def test_fail_report_has_a_diagnostic(self, script, tmp_path, capsys):
        report = tmp_path / "report.json"
        assert main(["check", script(WRONG_SCRIPT), "--report", str(report)]) == 1
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["status"] == "fail"
        assert data["proofs"][0]["step"] == 2
        assert data["diagnostics"][0]["location"] == "proof wrong, main step 2"

    def test_error_report(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        assert main(["check", str(tmp_path / "absent.q0u"), "--report", str(report)]) == 2
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["error"]["code"] == "FILE_ACCESS"

    def test_unexpected_error_report(self, tmp_path, monkeypatch, capsys):
        def fail(args):
            raise RuntimeError("disk on fire")

        monkeypatch.setattr(schema_command, "run", fail)
        report = tmp_path / "report.json"
        assert main(["schema", "--report", str(report)]) == 2
        assert "error [INTERNAL_ERROR]: unexpected error: disk on fire" in capsys.readouterr().out
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["status"] == "fail"
        assert data["error"]["details"] == {"type": "RuntimeError"}

    def test_schema_writes_a_pass_report(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        assert main(["schema", "--report", str(report)]) == 0
        assert json.loads(report.read_text(encoding="utf-8"))["status"] == "pass"

    def test_unwritable_report(self, script, tmp_path, capsys):
        report = tmp_path / "missing-dir" / "report.json"
        assert main(["check", script(A5_SCRIPT), "--report", str(report)]) == 2


class TestSchema:
    def test_report_schema(self, capsys):
        assert main(["schema"]) == 0
        schema = json.loads(capsys.readouterr().out)
        assert "status" in schema["properties"]

    def test_model_schema(self, capsys):
        assert main(["schema", "model"]) == 0
        schema = json.loads(capsys.readouterr().out)
        assert "base" in schema["required"]


class TestSelfcheck:
    def test_a9_mutation_fails(self, capsys):
        args = ["selfcheck", "--iota-base", "1", "--generated", "10", "--tautologies", "20", "--mutate", "A9"]
        assert main(args) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "selfcheck axioms: A9." in out

    @pytest.mark.slow
    def test_passes(self, capsys):
        args = ["selfcheck", "--iota-base", "1", "--iota-base", "2", "--generated", "30", "--tautologies", "100"]
        assert main(args) == 0
        assert "PASS" in capsys.readouterr().out

    @pytest.mark.slow
    def test_r1_mutation_fails(self, capsys):
        args = ["selfcheck", "--iota-base", "1", "--iota-base", "2", "--generated", "10", "--tautologies", "20", "--mutate", "R1"]
        assert main(args) == 1
        assert "hyp-r1-captured" in capsys.readouterr().out


def test_unknown_command_exits_with_usage_error():
    with pytest.raises(SystemExit) as exc_info:
        main(["prove"])
    assert exc_info.value.code == 2


def test_sample_script_checks(capsys):
    sample = Path(__file__).parents[2] / "docs" / "samples" / "demo.q0u"
    assert main(["check", str(sample)]) == 1
    assert "3/4 proofs accepted" in capsys.readouterr().out
    assert main(["check", "--extended", str(sample)]) == 0


def test_sample_model_evaluates(capsys):
    sample = Path(__file__).parents[2] / "docs" / "samples" / "model.json"
    assert main(["eval", str(sample), "k (k c)", "--explain"]) == 0
    assert capsys.readouterr().out.splitlines()[:2] == ["undefined", "  k (k c) : i = undefined"]
