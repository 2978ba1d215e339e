from typing import Any, Dict, List, Optional, Tuple

from ..errors import PreconditionError
from ..proofsys import CriticalTermInfo
from .models import SelectionContext, SelectionResult, SelectionStrategy


def maximal_candidates(context: SelectionContext) -> List[CriticalTermInfo]:
    """Critical ε-terms of the requested rank (default: the proof's rank) with the greatest degree."""
    analysis = context.analysis
    r = analysis.report.rank if context.rank is None else context.rank
    at_rank = analysis.at_rank(r)
    if not at_rank:
        raise PreconditionError(f"No critical ε-term of rank {r} to select")
    top = max(info.degree for info in at_rank)
    return [info for info in at_rank if info.degree == top]


class MaximalTermSelection(SelectionStrategy):
    """Greatest rank, then greatest degree, then the canonical term order."""

    name = "maximal"

    def __init__(self) -> None:
        self.history: List[Tuple[int, Optional[int]]] = []

    def apply(self, context: SelectionContext) -> SelectionResult:
        chosen = max(maximal_candidates(context), key=lambda info: info.term.key)
        return SelectionResult(
            term=chosen.term,
            rationale=f"rank {chosen.rank}, degree {chosen.degree}, width {chosen.width}",
            tags={"rank": chosen.rank, "degree": chosen.degree},
        )

    def result(self, step: int, cc: Optional[int]) -> None:
        self.history.append((step, cc))

    def serialize(self) -> Dict[str, Any]:
        return {"name": self.name, "history": [list(h) for h in self.history]}

    def deserialize(self, state: Dict[str, Any]) -> None:
        self.history = [(step, cc) for step, cc in state.get("history", [])]
