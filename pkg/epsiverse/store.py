import csv
import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Set, Type, Union

if TYPE_CHECKING:
    from .eliminate.trace import BoundCheck, EliminationTrace, TraceStep


def _trace_type() -> Type["EliminationTrace"]:
    # eliminate.driver imports this module
    from .eliminate.trace import EliminationTrace

    return EliminationTrace


def step_metrics(step: "TraceStep") -> Dict[str, Union[int, float]]:
    """Numeric measures of a step, suffixed by the side they were taken on."""
    metrics: Dict[str, Union[int, float]] = {}
    for side, measures in (("before", step.before), ("after", step.after)):
        for name, value in measures.items():
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                metrics[f"{name}_{side}"] = value
    return metrics


class Store(ABC):
    @abstractmethod
    def add_step(self, step: "TraceStep") -> None:
        pass

    @abstractmethod
    def add_summary(self, checks: List["BoundCheck"]) -> None:
        pass

    @abstractmethod
    def get_trace(self) -> "EliminationTrace":
        pass


class MemoryStore(Store):
    def __init__(self) -> None:
        self._records: List[Dict[str, Any]] = []

    def add_step(self, step: "TraceStep") -> None:
        self._records.append(step.to_record())

    def add_summary(self, checks: List["BoundCheck"]) -> None:
        self._records.append(_trace_type()(summary=list(checks)).to_records()[-1])

    def get_trace(self) -> "EliminationTrace":
        return _trace_type().from_records(self._records)


class TraceStore(Store):
    """One JSON record per step in ``trace.jsonl`` plus a ``summary.csv`` of step measures."""

    def __init__(self, directory: Path):
        self._directory = Path(directory)

    @property
    def trace_file(self) -> Path:
        return self._directory / "trace.jsonl"

    def _append(self, record: Dict[str, Any]) -> None:
        self._directory.mkdir(parents=True, exist_ok=True)
        with open(self.trace_file, "a") as f:
            f.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def _read_records(self) -> List[Dict[str, Any]]:
        if not self.trace_file.exists():
            return []
        with open(self.trace_file, "r") as f:
            return [json.loads(line) for line in f if line.strip()]

    def _write_summary_csv(self) -> None:
        """Rewrite summary.csv with one column per metric seen in any step."""
        steps = self.get_trace().steps

        all_metric_names: Set[str] = set()
        rows = []
        for step in steps:
            metrics = step_metrics(step)
            all_metric_names.update(metrics.keys())
            rows.append((step, metrics))
        sorted_metric_names = sorted(all_metric_names)

        csv_path = self._directory / "summary.csv"
        with open(csv_path, "w", newline="") as csvfile:
            writer = csv.writer(csvfile)
            metric_headers = [f"m_{name}" for name in sorted_metric_names]
            writer.writerow(["index", "lemma", "rank", "term", "cases", "passed"] + metric_headers)

            for step, metrics in rows:
                metric_values = [metrics.get(name) for name in sorted_metric_names]
                writer.writerow(
                    [step.index, step.lemma, step.rank, step.term or "", step.cases, step.passed] + metric_values
                )

    def add_step(self, step: "TraceStep") -> None:
        self._append(step.to_record())
        self._write_summary_csv()

    def add_summary(self, checks: List["BoundCheck"]) -> None:
        self._append(_trace_type()(summary=list(checks)).to_records()[-1])

    def get_trace(self) -> "EliminationTrace":
        return _trace_type().from_records(self._read_records())
