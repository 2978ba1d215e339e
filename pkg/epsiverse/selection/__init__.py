from .closure import ClosureMaximalSelection
from .maximal import MaximalTermSelection, maximal_candidates
from .models import SelectionContext, SelectionResult, SelectionStrategy

__all__ = [
    "ClosureMaximalSelection",
    "MaximalTermSelection",
    "SelectionContext",
    "SelectionResult",
    "SelectionStrategy",
    "maximal_candidates",
]
