import json
from pathlib import Path

import pytest

from epsiverse.cli import EXIT_CHECK, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, exit_code, run
from epsiverse.errors import BoundViolation, ParseError, ResourceLimitError
from epsiverse.proofsys import EC_EPS_EQ, check_proof, read_proof

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_path(name):
    return str(CORPUS / f"{name}.eproof")


def test_check(capsys):
    assert run(["check", corpus_path("first-critical")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ok under ec-eps-eq" in out
    assert "cc 1" in out


def test_check_reports_diagnostics(tmp_path, capsys):
    broken = tmp_path / "broken.eproof"
    broken.write_text("1. P(C) ; taut\n")
    assert run(["check", str(broken)]) == EXIT_CHECK
    assert "line" in capsys.readouterr().out.lower()


def test_measure_emits_json(capsys):
    assert run(["measure", corpus_path("first-epseq")]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["cc"] == 2
    assert data["cc_eq"] == 1
    assert data["system"] == "ec-eps-eq"
    assert data["cr"] == [1]


def test_translate_writes_a_checkable_proof(tmp_path):
    out = tmp_path / "ip.eproof"
    assert run(["translate", corpus_path("pc-ip"), "-o", str(out)]) == EXIT_OK
    assert check_proof(EC_EPS_EQ, read_proof(out)).ok


def test_eliminate(tmp_path):
    out = tmp_path / "elementary.eproof"
    assert run(["eliminate", corpus_path("first-critical"), "--system", "ec-eps", "-o", str(out)]) == EXIT_OK
    proof = read_proof(out)
    assert not any(f.has_eps for f in proof.formulas())


def test_herbrand_from_a_quantifier_proof(capsys):
    assert run(["herbrand", corpus_path("pc-drinker"), "--system", "pc-eq"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["length"] >= 1
    assert data["passed"] is True
    assert isinstance(data["trace"], list)


def test_herbrand_with_a_trace_directory(tmp_path):
    trace = tmp_path / "trace"
    assert run(["--trace", str(trace), "herbrand", corpus_path("drinker")]) == EXIT_OK
    assert (trace / "trace.jsonl").exists()


@pytest.mark.parametrize("family", ["statman", "yukami"])
def test_bench_lower(family, capsys):
    assert run(["bench-lower", family, "--n", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,cc,lines"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]


def test_generate(tmp_path):
    out = tmp_path / "generated"
    assert run(["--seed", "5", "generate", str(out), "--count", "3"]) == EXIT_OK
    files = sorted(out.glob("*.eproof"))
    assert [f.name for f in files] == ["generated-0005.eproof", "generated-0006.eproof", "generated-0007.eproof"]
    assert run(["check", str(files[0])]) == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["check"],
        ["check", corpus_path("ip"), "--system", "nope"],
        ["check", "missing.eproof"],
        ["bench-lower", "other"],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_help_exits_cleanly():
    assert run(["--help"]) == EXIT_OK


def test_malformed_proof_file(tmp_path):
    bad = tmp_path / "bad.eproof"
    bad.write_text("1. P( ; taut\n")
    assert run(["check", str(bad)]) == EXIT_USAGE


def test_eliminate_needs_an_epsilon_free_end_formula():
    assert run(["eliminate", corpus_path("ip")]) == EXIT_USAGE


def test_resource_limits(capsys):
    assert run(["--max-lines", "1", "eliminate", corpus_path("first-critical"), "--system", "ec-eps"]) == EXIT_RESOURCE
    assert "epsiverse:" in capsys.readouterr().err


def test_exit_codes():
    assert exit_code(ParseError("x")) == EXIT_USAGE
    assert exit_code(ResourceLimitError("x")) == EXIT_RESOURCE
    assert exit_code(BoundViolation("x")) == EXIT_CHECK
    assert exit_code(RuntimeError("x")) is None
