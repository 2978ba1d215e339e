"""Elimination under positional ε-equality, steered by the closure order."""

import logging
from typing import Optional, Tuple

from ..config import EliminationConfig
from ..errors import PreconditionError
from ..kernel import Eps
from ..proofsys import EqualityMode, ProofAnalysis
from ..proofsys.closure import closures_by_matrix
from ..selection import SelectionResult
from .extended import HerbrandState, ext_eliminate_step
from .first import eliminate_step, is_maximal
from .trace import EliminationTrace

logger = logging.getLogger(__name__)


def is_closure_maximal(analysis: ProofAnalysis, e: Eps) -> bool:
    """Maximal, and above every other critical instance of its matrix in the closure order."""
    if not is_maximal(analysis, e):
        return False
    info = analysis.terms[e]
    closure = closures_by_matrix(analysis.result, analysis.terms)[info.matrix]
    return closure.is_greatest(e, [other.term for other in analysis.of_matrix(info.matrix)])


def closure_eliminate_step(
    analysis: ProofAnalysis,
    e: Eps,
    state: Optional[HerbrandState] = None,
    trace: Optional[EliminationTrace] = None,
    config: Optional[EliminationConfig] = None,
    selection: Optional[SelectionResult] = None,
    strategy: Optional[str] = None,
) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
    """Eliminate a closure-greatest ``e``; without a Herbrand state the conclusion must not mention it."""
    system = analysis.result.system
    if system.eps_equality is not EqualityMode.POSITIONAL:
        raise PreconditionError(f"Closure elimination needs positional ε-equality, {system.name} has {system.eps_equality.value}")
    if not is_closure_maximal(analysis, e):
        raise PreconditionError(f"{e} is not greatest among the critical instances of its matrix")
    if selection is None:
        selection = SelectionResult(term=e, rationale="closure-greatest instance", greatest_in_matrix=True)
    if state is not None:
        return ext_eliminate_step(analysis, state, e, trace, config, selection, strategy)
    _, after = eliminate_step(analysis, e, None, trace, config, selection, strategy)
    return after, None
