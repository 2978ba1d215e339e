from typing import Any, Dict, List, Optional, Tuple

from ..proofsys import lex_key
from ..proofsys.closure import closures_by_matrix
from .maximal import maximal_candidates
from .models import SelectionContext, SelectionResult, SelectionStrategy


class ClosureMaximalSelection(SelectionStrategy):
    """Prefer a term above every other critical instance of its matrix in the closure order.

    When no candidate is greatest, the lexicographically largest argument vector wins.
    """

    name = "closure"

    def __init__(self) -> None:
        self.history: List[Tuple[int, Optional[int]]] = []
        self.fallbacks = 0

    def apply(self, context: SelectionContext) -> SelectionResult:
        analysis = context.analysis
        candidates = maximal_candidates(context)
        closures = closures_by_matrix(analysis.result, analysis.terms)
        greatest = []
        for info in candidates:
            siblings = [other.term for other in analysis.of_matrix(info.matrix)]
            if closures[info.matrix].is_greatest(info.term, siblings):
                greatest.append(info)
        if greatest:
            chosen = max(greatest, key=lambda info: lex_key(info.term))
            return SelectionResult(
                term=chosen.term,
                rationale=f"greatest of {len(analysis.of_matrix(chosen.matrix))} instances of its matrix",
                greatest_in_matrix=True,
                tags={"rank": chosen.rank, "degree": chosen.degree},
            )
        self.fallbacks += 1
        chosen = max(candidates, key=lambda info: lex_key(info.term))
        return SelectionResult(
            term=chosen.term,
            rationale="no closure-greatest instance, lexicographic maximum",
            greatest_in_matrix=False,
            tags={"rank": chosen.rank, "degree": chosen.degree},
        )

    def result(self, step: int, cc: Optional[int]) -> None:
        self.history.append((step, cc))

    def serialize(self) -> Dict[str, Any]:
        return {"name": self.name, "fallbacks": self.fallbacks, "history": [list(h) for h in self.history]}

    def deserialize(self, state: Dict[str, Any]) -> None:
        self.fallbacks = state.get("fallbacks", 0)
        self.history = [(step, cc) for step, cc in state.get("history", [])]
