"""Drivers of the first and extended first epsilon theorems.

The :class:`Eliminator` repeatedly selects a maximal critical ε-term, applies
one elimination step, re-checks the result and records the step's bound
checks. Every step is appended to the configured trace store as it happens.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import EliminationConfig, applied
from ..errors import PreconditionError, ResourceLimitError
from ..kernel import Formula, Term, format_formula, format_term
from ..proofsys import EqualityMode, Proof, ProofAnalysis, System, analyze, verify
from ..selection import (
    ClosureMaximalSelection,
    MaximalTermSelection,
    SelectionContext,
    SelectionResult,
    SelectionStrategy,
)
from ..store import MemoryStore, Store, TraceStore
from . import bounds
from .extended import HerbrandState, SymbolRegistry, default_matrix, eliminate_eq_only_rank, ext_eliminate_step, replace_residuals
from .first import eliminate_step
from .positional import closure_eliminate_step, is_closure_maximal
from .trace import BoundCheck, EliminationTrace, TraceStep

logger = logging.getLogger(__name__)

MODES = {"matrix": EqualityMode.MATRIX, "positional": EqualityMode.POSITIONAL}


@dataclass
class HerbrandResult:
    """The Herbrand disjunction ``E(t_0) ∨ … ∨ E(t_n)`` and its elementary proof."""

    matrix: Formula
    holes: Tuple[str, ...]
    tuples: List[Tuple[Term, ...]]
    proof: Proof
    system: System
    trace: EliminationTrace = field(default_factory=EliminationTrace)

    @property
    def length(self) -> int:
        return len(self.tuples)

    @property
    def disjunction(self) -> Formula:
        return HerbrandState(self.matrix, self.holes, self.tuples).formula

    def to_dict(self) -> Dict[str, Any]:
        return {
            "matrix": format_formula(self.matrix),
            "holes": list(self.holes),
            "length": self.length,
            "tuples": [[format_term(t) for t in tup] for tup in self.tuples],
            "disjunction": format_formula(self.disjunction),
            "system": self.system.name,
            "lines": len(self.proof),
            "passed": self.trace.passed,
            "violations": len(self.trace.violations),
        }


def _eliminable(system: System) -> None:
    if system.quantifiers:
        raise PreconditionError(f"{system.name} has quantifier rules; translate the proof into the ε-calculus first")
    if system.eps_equality is EqualityMode.UNRESTRICTED:
        raise PreconditionError("ε-elimination is not available for unrestricted ε-equality")


class Eliminator:
    def __init__(
        self,
        config: Optional[EliminationConfig] = None,
        selection: Optional[SelectionStrategy] = None,
        store: Optional[Store] = None,
    ):
        self._config = config or EliminationConfig()
        self._selection = selection
        if store is None:
            store = TraceStore(self._config.trace_path) if self._config.trace_path is not None else MemoryStore()
        self._store = store
        self._trace = EliminationTrace()
        self._saved = 0

    @property
    def config(self) -> EliminationConfig:
        return self._config

    @property
    def trace(self) -> EliminationTrace:
        return self._trace

    @property
    def store(self) -> Store:
        return self._store

    def _strategy(self, system: System) -> SelectionStrategy:
        if self._selection is None:
            if system.eps_equality is EqualityMode.POSITIONAL:
                self._selection = ClosureMaximalSelection()
            else:
                self._selection = MaximalTermSelection()
        return self._selection

    def _save_record(self) -> None:
        while self._saved < len(self._trace.steps):
            step = self._trace.steps[self._saved]
            self._store.add_step(step)
            self._saved += 1
            logger.debug(f"Saved trace record {step.index} ({step.lemma})")

    def _save_record_safely(self) -> None:
        try:
            self._save_record()
        except Exception as e:
            logger.warning(f"Failed to save trace record {self._saved}: {e}", exc_info=True)
            self._saved = len(self._trace.steps)

    def _save_summary_safely(self, checks: List[BoundCheck]) -> None:
        try:
            self._store.add_summary(checks)
        except Exception as e:
            logger.warning(f"Failed to save trace summary: {e}", exc_info=True)

    def _guard(self) -> int:
        step = len(self._trace.steps)
        if step >= self._config.max_steps:
            raise ResourceLimitError(f"Elimination exceeded {self._config.max_steps} steps")
        return step

    def _select(self, analysis: ProofAnalysis, r: int) -> SelectionResult:
        strategy = self._strategy(analysis.result.system)
        step = self._guard()
        chosen = strategy.apply(SelectionContext(step=step, analysis=analysis, rank=r))
        info = analysis.terms[chosen.term]
        logger.info(f"Selected critical term {format_term(chosen.term)} (width {info.width})")
        return chosen

    def _step(
        self, analysis: ProofAnalysis, r: int, state: Optional[HerbrandState]
    ) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
        step = len(self._trace.steps)
        logger.info(f"Starting elimination step {step + 1} at rank {r}")
        chosen = self._select(analysis, r)
        strategy = self._strategy(analysis.result.system)
        e = chosen.term
        if chosen.greatest_in_matrix and is_closure_maximal(analysis, e):
            after, state = closure_eliminate_step(analysis, e, state, self._trace, self._config, chosen, strategy.name)
        elif state is not None:
            after, state = ext_eliminate_step(analysis, state, e, self._trace, self._config, chosen, strategy.name)
        else:
            _, after = eliminate_step(analysis, e, None, self._trace, self._config, chosen, strategy.name)
        strategy.result(step, after.report.cc)
        self._save_record_safely()
        return after, state

    def _rank_step(self, lemma: str, r: int, before: ProofAnalysis, after: ProofAnalysis, checks: List[BoundCheck]) -> None:
        self._trace.add(
            TraceStep(
                index=0,
                lemma=lemma,
                rank=r,
                before=bounds.snapshot(before, r),
                after=bounds.snapshot(after, r),
                checks=checks,
            )
        )
        self._save_record_safely()

    def reduce_rank(
        self, analysis: ProofAnalysis, state: Optional[HerbrandState] = None
    ) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
        """Eliminate every critical ε-term of the top rank, one maximal term at a time."""
        _eliminable(analysis.result.system)
        r = analysis.report.rank
        if r < 1:
            raise PreconditionError("The proof has no critical ε-term; its rank is already 0")
        while analysis.report.order_at(r) > 0:
            analysis, state = self._step(analysis, r, state)
        assert analysis.report.rank < r
        return analysis, state

    def normalize_to_critical_rank(
        self, analysis: ProofAnalysis, state: Optional[HerbrandState], registry: SymbolRegistry
    ) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
        """Substitute function symbols until no rank above every critical formula remains."""
        while analysis.report.rank > 0 and analysis.report.rank not in analysis.report.cr:
            self._guard()
            analysis, state = eliminate_eq_only_rank(analysis, state, registry, self._trace)
            self._save_record_safely()
        return analysis, state

    def eliminate_rank_critical(
        self, analysis: ProofAnalysis, state: HerbrandState
    ) -> Tuple[ProofAnalysis, HerbrandState]:
        """Remove the top rank, which must carry a critical formula."""
        before = analysis
        r = analysis.report.rank
        if r < 1 or r not in analysis.report.cr:
            raise PreconditionError(f"No critical formula at the proof's rank {r}")
        old_length = len(state)
        after, new_state = self.reduce_rank(analysis, state)
        assert new_state is not None
        checks = bounds.rank_level(before.report, after.report, r, old_length, len(new_state))
        expected = before.report.cr - {r}
        checks.append(
            BoundCheck("cr", "CR \\ {r}", str(sorted(expected)), int(after.report.cr != expected), after.report.cr == expected)
        )
        self._rank_step("rank", r, before, after, checks)
        return after, new_state

    def closure_eliminate_rank(
        self, analysis: ProofAnalysis, state: Optional[HerbrandState] = None
    ) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
        """Remove the top rank of a positional proof by closure-greatest steps."""
        if analysis.result.system.eps_equality is not EqualityMode.POSITIONAL:
            raise PreconditionError(f"{analysis.result.system.name} does not have positional ε-equality")
        before = analysis
        r = analysis.report.rank
        first = len(self._trace.steps)
        after, state = self.reduce_rank(analysis, state)
        checks = bounds.closure_rank(before.report, after.report, len(self._trace.steps) - first)
        self._rank_step("closure-rank", r, before, after, checks)
        return after, state

    def first_epsilon_theorem(self, system: System, proof: Proof) -> Proof:
        """An elementary proof of the ε-free, quantifier-free end formula of ``proof``."""
        conclusion = proof.conclusion
        if conclusion.has_eps or conclusion.has_quant:
            raise PreconditionError(f"The end formula {format_formula(conclusion)} is not ε-free and quantifier-free")
        _eliminable(system)
        with applied(self._config):
            analysis = analyze(system, proof)
            logger.info(f"Starting elimination of {analysis.report.cc} critical formula(s), rank {analysis.report.rank}")
            while analysis.report.rank > 0:
                analysis, _ = self.reduce_rank(analysis)
            final, _ = replace_residuals(analysis.proof, self._config.residual_factory)
            verify(system.elementary(), final)
        assert final.conclusion is conclusion
        self._finish([])
        logger.info(f"Elementary proof with {len(final)} lines after {len(self._trace.steps)} step(s)")
        return final

    def extended_first_epsilon_theorem(
        self,
        system: System,
        proof: Proof,
        matrix: Optional[Formula] = None,
        holes: Sequence[str] = (),
        terms: Sequence[Term] = (),
        source_cc: Optional[int] = None,
    ) -> HerbrandResult:
        """A Herbrand disjunction of ``matrix`` and its elementary proof.

        Without ``matrix`` the maximal ε-subterms of the end formula are abstracted.
        ``source_cc`` is the critical count of a predicate-calculus proof the input
        was translated from; the pipeline bound is then checked as well.
        """
        _eliminable(system)
        if matrix is None:
            matrix, holes, terms = default_matrix(proof.conclusion)
        state = HerbrandState.start(matrix, holes, terms, proof.conclusion)
        registry = SymbolRegistry()
        positional = system.eps_equality is EqualityMode.POSITIONAL
        with applied(self._config):
            analysis = analyze(system, proof)
            initial = analysis.report
            logger.info(f"Starting Herbrand extraction: cc {initial.cc}, rank {initial.rank}, mode {system.eps_equality.value}")
            summary: List[BoundCheck] = []
            if positional:
                for r in range(1, initial.rank + 1):
                    summary.extend(bounds.closure_sizes(analysis, r))
            while analysis.report.rank > 0:
                if positional:
                    analysis, next_state = self.closure_eliminate_rank(analysis, state)
                    assert next_state is not None
                    state = next_state
                    continue
                analysis, next_state = self.normalize_to_critical_rank(analysis, state, registry)
                assert next_state is not None
                state = next_state
                if analysis.report.rank > 0:
                    analysis, state = self.eliminate_rank_critical(analysis, state)
            final, next_state = replace_residuals(analysis.proof, self._config.residual_factory, state)
            assert next_state is not None
            state = next_state
            elementary = system.elementary()
            verify(elementary, final)
        assert final.conclusion is state.formula
        if positional:
            summary.append(bounds.closure_theorem(initial.cc, initial.max_property_degree, len(state)))
        else:
            summary.append(bounds.first_theorem(initial.cc, initial.max_arity, initial.max_property_degree, len(state)))
        if source_cc is not None:
            summary.append(bounds.herbrand_pipeline(source_cc, len(state)))
        self._finish(summary)
        logger.info(f"Herbrand disjunction of length {len(state)} after {len(self._trace.steps)} step(s)")
        return HerbrandResult(state.matrix, state.holes, list(state.tuples), final, elementary, self._trace)

    def _finish(self, summary: List[BoundCheck]) -> None:
        self._trace.summary.extend(summary)
        self._save_record_safely()
        if summary:
            self._save_summary_safely(summary)
        violations = self._trace.violations
        if violations:
            logger.warning(f"{len(violations)} bound check(s) failed")
        if self._config.enforce_bounds:
            self._trace.raise_for_violations()


def reduce_rank(
    system: System, proof: Proof, config: Optional[EliminationConfig] = None, trace: Optional[EliminationTrace] = None
) -> Proof:
    eliminator = Eliminator(config)
    with applied(eliminator.config):
        analysis, _ = eliminator.reduce_rank(analyze(system, proof))
    if trace is not None:
        trace.steps.extend(eliminator.trace.steps)
    return analysis.proof


def first_epsilon_theorem(system: System, proof: Proof, config: Optional[EliminationConfig] = None) -> Proof:
    return Eliminator(config).first_epsilon_theorem(system, proof)


def extended_first_epsilon_theorem(
    system: System,
    proof: Proof,
    mode: Optional[str] = None,
    matrix: Optional[Formula] = None,
    holes: Sequence[str] = (),
    terms: Sequence[Term] = (),
    config: Optional[EliminationConfig] = None,
    source_cc: Optional[int] = None,
) -> HerbrandResult:
    """``mode`` (``matrix`` or ``positional``) switches ``system`` to that ε-equality first."""
    if mode is not None:
        if mode not in MODES:
            raise PreconditionError(f"Unsupported mode '{mode}'. Supported modes: {', '.join(MODES)}")
        system = system.with_mode(MODES[mode])
    return Eliminator(config).extended_first_epsilon_theorem(system, proof, matrix, holes, terms, source_cc)


def normalize_to_critical_rank(
    system: System, proof: Proof, config: Optional[EliminationConfig] = None
) -> Proof:
    eliminator = Eliminator(config)
    with applied(eliminator.config):
        analysis, _ = eliminator.normalize_to_critical_rank(analyze(system, proof), None, SymbolRegistry())
    return analysis.proof


def eliminate_rank_critical(
    system: System, proof: Proof, state: Optional[HerbrandState] = None, config: Optional[EliminationConfig] = None
) -> Tuple[Proof, HerbrandState]:
    """Without ``state`` the end formula's maximal ε-subterms are abstracted."""
    if state is None:
        matrix, holes, terms = default_matrix(proof.conclusion)
        state = HerbrandState.start(matrix, holes, terms, proof.conclusion)
    eliminator = Eliminator(config)
    with applied(eliminator.config):
        analysis, state = eliminator.eliminate_rank_critical(analyze(system, proof), state)
    return analysis.proof, state


def closure_eliminate_rank(
    system: System, proof: Proof, state: Optional[HerbrandState] = None, config: Optional[EliminationConfig] = None
) -> Tuple[Proof, Optional[HerbrandState]]:
    eliminator = Eliminator(config)
    with applied(eliminator.config):
        analysis, state = eliminator.closure_eliminate_rank(analyze(system, proof), state)
    return analysis.proof, state
