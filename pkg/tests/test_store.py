import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from epsiverse.config import EliminationConfig
from epsiverse.eliminate import BoundCheck, Eliminator, TraceStep
from epsiverse.proofsys import EC_EPS, read_proof
from epsiverse.store import MemoryStore, TraceStore, step_metrics

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def sample_step():
    return TraceStep(
        index=0,
        lemma="critical",
        rank=1,
        term="eps x. P(x)",
        before={"cc": 2, "cr": [1]},
        after={"cc": 1, "cr": []},
        checks=[BoundCheck.of("cc", "k(w+1)", 4, 1)],
    )


def test_step_metrics_keep_numbers_only():
    assert step_metrics(sample_step()) == {"cc_before": 2, "cc_after": 1}


def test_memory_store():
    store = MemoryStore()
    store.add_step(sample_step())
    store.add_summary([BoundCheck.of("length", "1", 1, 1)])
    trace = store.get_trace()
    assert trace.steps == [sample_step()]
    assert [c.name for c in trace.summary] == ["length"]
    assert trace.passed


def test_trace_store_writes_jsonl_and_csv(tmp_path):
    store = TraceStore(tmp_path / "run")
    store.add_step(sample_step())
    records = [json.loads(line) for line in store.trace_file.read_text().splitlines()]
    assert records[0]["lemma"] == "critical"
    assert records[0]["passed"] is True

    with open(tmp_path / "run" / "summary.csv", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0][:6] == ["index", "lemma", "rank", "term", "cases", "passed"]
    assert "m_cc_before" in rows[0]
    assert rows[1][1] == "critical"
    assert store.get_trace().steps == [sample_step()]


def test_missing_trace_file_reads_as_empty(tmp_path):
    assert TraceStore(tmp_path).get_trace().steps == []


def test_eliminator_writes_its_trace(tmp_path):
    eliminator = Eliminator(EliminationConfig(trace_path=tmp_path))
    eliminator.first_epsilon_theorem(EC_EPS, read_proof(CORPUS / "first-critical.eproof"))
    saved = TraceStore(tmp_path).get_trace()
    assert [s.lemma for s in saved.steps] == [s.lemma for s in eliminator.trace.steps]
    assert (tmp_path / "summary.csv").exists()


@pytest.mark.parametrize("module", ["epsiverse.store", "epsiverse", "epsiverse.cli"])
def test_modules_import_in_a_fresh_interpreter(module):
    done = subprocess.run(
        [sys.executable, "-c", f"import {module}"], capture_output=True, text=True, cwd=CORPUS.parent
    )
    assert done.returncode == 0, done.stderr
