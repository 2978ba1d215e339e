"""Elimination of one maximal critical ε-term, the conclusion left unchanged."""

import logging
from typing import List, Optional, Tuple

from ..config import EliminationConfig
from ..errors import PreconditionError
from ..kernel import Eps, Formula, format_term, occurs, property_degree
from ..proofsys import EqualityMode, Proof, ProofAnalysis, System, analyze
from ..selection import SelectionResult
from . import bounds
from .cases import Split, TermLines, split_on
from .trace import BoundCheck, EliminationTrace, TraceStep

logger = logging.getLogger(__name__)


def is_maximal(analysis: ProofAnalysis, e: Eps) -> bool:
    """``e`` has the proof's rank and the greatest degree among the critical ε-terms of that rank."""
    info = analysis.terms.get(e)
    if info is None:
        return False
    r = analysis.report.rank
    return info.rank == r and info.degree == max(i.degree for i in analysis.at_rank(r))


def lemma_checks(before: ProofAnalysis, after: ProofAnalysis, e: Eps, view: TermLines) -> Tuple[str, List[BoundCheck]]:
    info = before.terms[e]
    r = info.rank
    if not view.partners:
        return "critical", bounds.critical_step(before.report, after.report, r, info.width)
    if not view.witnesses:
        return "equality", bounds.equality_step(before.report, after.report, r, info.width)
    return "mixed", bounds.mixed_step(before.report, after.report, r, view.matrix.arity, property_degree(e))


def new_step(
    lemma: str,
    rank: int,
    e: Eps,
    split: Split,
    before: ProofAnalysis,
    after: ProofAnalysis,
    checks: List[BoundCheck],
    selection: Optional[SelectionResult] = None,
    strategy: Optional[str] = None,
) -> TraceStep:
    return TraceStep(
        index=0,
        lemma=lemma,
        rank=rank,
        term=format_term(e),
        strategy=strategy,
        rationale=selection.rationale if selection is not None else None,
        greatest_in_matrix=selection.greatest_in_matrix if selection is not None else None,
        cases=len(split.cases),
        before=bounds.snapshot(before, rank),
        after=bounds.snapshot(after, rank),
        checks=checks,
    )


def eliminate_step(
    analysis: ProofAnalysis,
    e: Eps,
    goal: Optional[Formula] = None,
    trace: Optional[EliminationTrace] = None,
    config: Optional[EliminationConfig] = None,
    selection: Optional[SelectionResult] = None,
    strategy: Optional[str] = None,
) -> Tuple[Split, ProofAnalysis]:
    """Split on a maximal ``e`` and check the result; ``goal`` defaults to the unchanged conclusion."""
    config = config or EliminationConfig()
    if not is_maximal(analysis, e):
        raise PreconditionError(f"{e} is not a maximal critical ε-term of the proof")
    if goal is None and occurs(e, analysis.proof.conclusion):
        raise PreconditionError(f"The conclusion mentions {e}; only the extended theorem can remove it")
    r = analysis.terms[e].rank
    split = split_on(analysis, e, goal, config.workers)
    after = analyze(analysis.result.system, split.proof)
    if trace is not None:
        if analysis.result.system.eps_equality is EqualityMode.POSITIONAL and split.view.partners:
            greatest = bool(selection is not None and selection.greatest_in_matrix)
            lemma = "closure"
            checks = bounds.closure_step(analysis, after, r, property_degree(e), e, greatest)
        else:
            lemma, checks = lemma_checks(analysis, after, e, split.view)
            checks.extend(bounds.order_decreased(analysis, after, r, e))
        trace.add(new_step(lemma, r, e, split, analysis, after, checks, selection, strategy))
    logger.debug(f"Eliminated {e}: cc {analysis.report.cc} -> {after.report.cc}, {len(split.cases)} case(s)")
    return split, after


def eliminate_no_eq(
    system: System,
    proof: Proof,
    e: Eps,
    trace: Optional[EliminationTrace] = None,
    config: Optional[EliminationConfig] = None,
) -> Proof:
    """Remove a maximal ``e`` that only critical formulas belong to."""
    analysis = analyze(system, proof)
    info = analysis.terms.get(e)
    if info is None:
        raise PreconditionError(f"{e} is not a critical ε-term of the proof")
    if info.epseq_formulas:
        raise PreconditionError(f"ε-equality formulas belong to {e}")
    split, _ = eliminate_step(analysis, e, trace=trace, config=config)
    return split.proof


def eliminate_with_eq(
    system: System,
    proof: Proof,
    e: Eps,
    trace: Optional[EliminationTrace] = None,
    config: Optional[EliminationConfig] = None,
) -> Proof:
    """Remove a maximal ``e`` that critical and matrix ε-equality formulas may belong to."""
    analysis = analyze(system, proof)
    info = analysis.terms.get(e)
    if info is None:
        raise PreconditionError(f"{e} is not a critical ε-term of the proof")
    if info.epseq_formulas and system.eps_equality is not EqualityMode.MATRIX:
        raise PreconditionError(f"ε-equality elimination needs matrix ε-equality, {system.name} has {system.eps_equality.value}")
    split, _ = eliminate_step(analysis, e, trace=trace, config=config)
    return split.proof
