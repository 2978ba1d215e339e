"""Extended first epsilon theorem: the conclusion ``E(s)`` grows into a Herbrand disjunction.

Each elimination step replaces the current disjunction by one copy per case,
with the eliminated ε-term substituted in the tuples. Ranks carrying only
ε-equality formulas are removed by function symbol substitution.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..config import EliminationConfig, ResidualFactory
from ..errors import PreconditionError, RegistryError
from ..kernel import (
    Eps,
    EpsMatrix,
    Fn,
    Formula,
    Node,
    Term,
    Var,
    disjunction,
    eps_matrix_of,
    fresh_names,
    maximal_eps_terms,
    replace,
    signature,
    substitute,
)
from ..kernel.syntax import rebuild
from ..proofsys import (
    Axiom,
    Critical,
    Line,
    ModusPonens,
    Proof,
    ProofAnalysis,
    ProofBuilder,
    analyze,
    derive,
    fn_congruence,
    refl,
)
from ..selection import SelectionResult
from . import bounds
from .cases import plan_cases, term_lines
from .first import eliminate_step
from .trace import BoundCheck, EliminationTrace, TraceStep

logger = logging.getLogger(__name__)


@dataclass
class HerbrandState:
    """An ε-free matrix ``E(a)`` and the tuples whose instances form the current disjunction."""

    matrix: Formula
    holes: Tuple[str, ...]
    tuples: List[Tuple[Term, ...]] = field(default_factory=list)

    def instance(self, terms: Sequence[Term]) -> Formula:
        return substitute(self.matrix, dict(zip(self.holes, terms)))

    @property
    def formula(self) -> Formula:
        f = disjunction([self.instance(t) for t in self.tuples])
        assert f is not None
        return f

    def __len__(self) -> int:
        return len(self.tuples)

    def terms(self) -> List[Term]:
        return [t for tup in self.tuples for t in tup]

    @classmethod
    def start(cls, matrix: Formula, holes: Sequence[str], terms: Sequence[Term], conclusion: Formula) -> "HerbrandState":
        if matrix.has_eps or matrix.has_quant:
            raise PreconditionError("The Herbrand matrix must be ε-free and quantifier-free")
        if len(holes) != len(terms):
            raise PreconditionError(f"{len(holes)} placeholders but {len(terms)} terms")
        state = cls(matrix, tuple(holes), [tuple(terms)])
        if state.formula is not conclusion:
            raise PreconditionError("The matrix with the given terms is not the proof's conclusion")
        return state


def default_matrix(formula: Formula) -> Tuple[Formula, Tuple[str, ...], Tuple[Term, ...]]:
    """Abstract the maximal ε-subterms, one placeholder per α-class, left to right."""
    terms = maximal_eps_terms(formula)
    holes = tuple(fresh_names.fresh("_h", formula.free_vars) for _ in terms)
    matrix = replace(formula, {e: Var(h) for e, h in zip(terms, holes)})
    return matrix, holes, tuple(terms)


def ext_eliminate_step(
    analysis: ProofAnalysis,
    state: HerbrandState,
    e: Eps,
    trace: Optional[EliminationTrace] = None,
    config: Optional[EliminationConfig] = None,
    selection: Optional[SelectionResult] = None,
    strategy: Optional[str] = None,
) -> Tuple[ProofAnalysis, HerbrandState]:
    """Eliminate a maximal ``e``; every case contributes its own copy of the tuples."""
    config = config or EliminationConfig()
    cases = plan_cases(term_lines(analysis, e))
    tuples: List[Tuple[Term, ...]] = []
    for case in cases:
        mapping = {e: case.replacement} if case.replacement is not None else {}
        for tup in state.tuples:
            tuples.append(tuple(replace(t, mapping) for t in tup) if mapping else tup)
    if config.dedup:
        tuples = list(dict.fromkeys(tuples))
    new_state = HerbrandState(state.matrix, state.holes, tuples)
    _, after = eliminate_step(analysis, e, new_state.formula, trace, config, selection, strategy)
    if trace is not None and trace.steps:
        trace.steps[-1].checks.append(BoundCheck.of("length", "cases*len", len(cases) * len(state), len(new_state)))
        trace.steps[-1].after["length"] = len(new_state)
        trace.steps[-1].before["length"] = len(state)
    return after, new_state


class SymbolRegistry:
    """Fresh function symbols standing for ε-matrices, one per matrix."""

    def __init__(self, prefix: str = "_fsub"):
        self._prefix = prefix
        self._symbols: Dict[EpsMatrix, str] = {}

    def __len__(self) -> int:
        return len(self._symbols)

    def __contains__(self, g: object) -> bool:
        return g in self._symbols

    @property
    def symbols(self) -> Dict[EpsMatrix, str]:
        return dict(self._symbols)

    def register(self, g: EpsMatrix, reserved: Iterable[str] = ()) -> str:
        name = self._symbols.get(g)
        if name is not None:
            return name
        name = f"{self._prefix}{len(self._symbols)}"
        if name in set(reserved):
            raise RegistryError(f"Function symbol {name} for {g} is already used by the proof")
        self._symbols[g] = name
        logger.debug(f"Registered {name} for {g}")
        return name


class _Rewriter:
    """Replaces closed instances of registered matrices by function applications."""

    def __init__(self, symbols: Mapping[EpsMatrix, str]):
        self._symbols = symbols
        self._cache: Dict[Node, Node] = {}

    def __call__(self, node: Node) -> Node:
        if not node.has_eps:
            return node
        hit = self._cache.get(node)
        if hit is not None:
            return hit
        out: Node
        symbol = None
        if isinstance(node, Eps) and node.closed:
            g, args = eps_matrix_of(node)
            symbol = self._symbols.get(g)
            if symbol is not None:
                out = Fn(symbol, tuple(self(a) for a in args))  # type: ignore[misc]
        if symbol is None:
            out = rebuild(node, tuple(self(c) for c in node.children()))
        self._cache[node] = out
        return out


def _function_symbols(proof: Proof, state: Optional[HerbrandState]) -> Set[str]:
    nodes: List[Node] = list(proof.axioms) + proof.formulas()
    if state is not None:
        nodes.extend(state.terms())
    return {name for kind, name in signature(nodes) if kind == "f"}


def _substitute_symbols(
    analysis: ProofAnalysis, symbols: Mapping[EpsMatrix, str], state: Optional[HerbrandState]
) -> Tuple[Proof, Optional[HerbrandState]]:
    rw = _Rewriter(symbols)
    proof = analysis.proof
    b = ProofBuilder([rw(a) for a in proof.axioms])  # type: ignore[misc]
    out: List[int] = []
    for line, info in zip(proof.lines, analysis.result.lines):
        assert info is not None
        f, j = line.formula, line.justification
        target: Formula = rw(f)  # type: ignore[assignment]
        eq = info.eps_equality
        if info.kind == "epseq" and eq is not None and eps_matrix_of(eq.left)[0] in symbols:
            left: Term = rw(eq.left)  # type: ignore[assignment]
            right: Term = rw(eq.right)  # type: ignore[assignment]
            if left is right:
                out.append(derive(b, target, [refl(b, left)]))
                continue
            assert isinstance(left, Fn) and isinstance(right, Fn)
            same = [refl(b, u) for u, v in zip(left.args, right.args) if u is v]
            congruence = fn_congruence(b, left.symbol, left.args, right.args)
            out.append(derive(b, target, same + [congruence]))
        elif isinstance(j, ModusPonens):
            out.append(b.mp(out[j.minor], out[j.major]))
        elif isinstance(j, Axiom):
            out.append(b.axiom(target))
        elif isinstance(j, Critical):
            assert info.term is not None and info.witness is not None
            out.append(b.add(target, Critical(rw(info.term), rw(info.witness))))  # type: ignore[arg-type]
        else:
            out.append(b.add(target, j))
    new_state = None
    if state is not None:
        new_state = HerbrandState(
            state.matrix, state.holes, [tuple(rw(t) for t in tup) for tup in state.tuples]  # type: ignore[misc]
        )
    return b.build(rw(proof.conclusion)), new_state  # type: ignore[arg-type]


def function_symbol_substitution(
    analysis: ProofAnalysis,
    g: EpsMatrix,
    registry: SymbolRegistry,
    state: Optional[HerbrandState] = None,
) -> Tuple[Proof, Optional[HerbrandState]]:
    """Replace every instance ``g(u)`` by ``f_g(u)``; ε-equality formulas of ``g`` become congruences.

    ``g`` must have the proof's rank and no critical formula may belong to an instance of it.
    """
    instances = analysis.of_matrix(g)
    if not instances:
        raise PreconditionError(f"{g} is not the matrix of a critical ε-term of the proof")
    if any(i.critical_formulas for i in instances):
        raise PreconditionError(f"Critical formulas belong to instances of {g}")
    if instances[0].rank != analysis.report.rank:
        raise PreconditionError(f"{g} has rank {instances[0].rank}, below the proof's rank {analysis.report.rank}")
    registry.register(g, _function_symbols(analysis.proof, state))
    return _substitute_symbols(analysis, {g: registry.symbols[g]}, state)


def eliminate_eq_only_rank(
    analysis: ProofAnalysis,
    state: Optional[HerbrandState],
    registry: SymbolRegistry,
    trace: Optional[EliminationTrace] = None,
) -> Tuple[ProofAnalysis, Optional[HerbrandState]]:
    """Remove the top rank when only ε-equality formulas live there."""
    report = analysis.report
    r = report.rank
    if r == 0 or r in report.cr:
        raise PreconditionError(f"Rank {r} carries critical formulas; function symbol substitution does not apply")
    reserved = _function_symbols(analysis.proof, state)
    matrices = list(dict.fromkeys(info.matrix for info in analysis.at_rank(r)))
    for g in matrices:
        registry.register(g, reserved)
    symbols = registry.symbols
    proof, new_state = _substitute_symbols(analysis, {g: symbols[g] for g in matrices}, state)
    after = analyze(analysis.result.system, proof)
    if trace is not None:
        trace.add(
            TraceStep(
                index=0,
                lemma="fsub",
                rank=r,
                rationale=f"{len(matrices)} matrix(es) replaced by function symbols",
                before=bounds.snapshot(analysis, r),
                after=bounds.snapshot(after, r),
                checks=bounds.eq_only_rank(report, after.report, r),
            )
        )
    logger.info(f"Rank {r} carried only ε-equality formulas; substituted {len(matrices)} function symbol(s)")
    return after, new_state


def replace_residuals(
    proof: Proof, factory: ResidualFactory, state: Optional[HerbrandState] = None
) -> Tuple[Proof, Optional[HerbrandState]]:
    """Replace the remaining ε-terms, none of them critical, by fresh variables or constants."""
    sources: List[Node] = []
    if state is not None:
        sources.extend(state.terms())
    sources.extend(proof.axioms)
    sources.extend(proof.formulas())
    residuals: List[Eps] = []
    for node in sources:
        residuals.extend(maximal_eps_terms(node))
    residuals = list(dict.fromkeys(residuals))
    if not residuals:
        return proof, state

    taken: Set[str] = set()
    for node in sources:
        taken |= node.free_vars
    taken |= {name for _, name in signature(sources)}
    mapping: Dict[Node, Node] = {}
    k = 0
    for e in residuals:
        while True:
            candidate = factory(k)
            k += 1
            name = candidate.name if isinstance(candidate, Var) else candidate.symbol  # type: ignore[attr-defined]
            if name not in taken:
                break
        mapping[e] = candidate

    def rep(n: Node) -> Node:
        return replace(n, mapping)

    lines = tuple(Line(rep(line.formula), line.justification) for line in proof.lines)  # type: ignore[arg-type]
    new_proof = Proof(tuple(rep(a) for a in proof.axioms), lines)  # type: ignore[misc]
    new_state = None
    if state is not None:
        new_state = HerbrandState(state.matrix, state.holes, [tuple(rep(t) for t in tup) for tup in state.tuples])  # type: ignore[misc]
    logger.info(f"Replaced {len(residuals)} residual ε-term(s)")
    return new_proof, new_state
