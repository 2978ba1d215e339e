"""Case split on one maximal critical ε-term.

For ``e = g(u)`` with critical witnesses ``t_1..t_m`` and ε-equality partners
``g(v_1)..g(v_n)`` the proof is rebuilt once per case:

* kept: no ``H_i`` and no ``A(t_j)`` holds; ``e`` stays and its formulas follow by ex falso;
* witness ``j``: no ``H_i`` but ``A(t_j)``; ``e`` becomes ``t_j``;
* partner ``i``: ``H_i``; ``e`` becomes ``g(v_i)``.

``H_i`` is ``u = v_i`` over all positions in matrix mode and ``u_p = v_p`` at
the single changed position in positional mode. The cases cover every
valuation, so excluded middle joins the rebuilt proofs.
"""

import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import PreconditionError
from ..kernel import (
    Eps,
    EpsMatrix,
    Eq,
    Formula,
    Imp,
    Not,
    Term,
    conjunction,
    eps_matrix_of,
    instantiate,
    occurs,
    replace,
)
from ..proofsys import (
    Axiom,
    Critical,
    EqualityMode,
    LineInfo,
    ModusPonens,
    Proof,
    ProofAnalysis,
    ProofBuilder,
    Tautology,
    combine_cases,
    derive,
    discharge,
    refl,
    sym_fact,
)
from .identity import equate_instances, transfer_critical

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partner:
    term: Eps
    args: Tuple[Term, ...]
    hypothesis: Formula
    position: Optional[int] = None


@dataclass
class TermLines:
    """The lines of a proof that belong to one critical ε-term."""

    term: Eps
    matrix: EpsMatrix
    args: Tuple[Term, ...]
    mode: EqualityMode
    witnesses: Dict[Formula, Term] = field(default_factory=dict)
    partners: Dict[Tuple[Eps, Optional[int]], Partner] = field(default_factory=dict)
    critical: List[int] = field(default_factory=list)
    equalities: List[int] = field(default_factory=list)


@dataclass
class Case:
    kind: str
    parts: List[Formula]
    replacement: Optional[Term] = None
    partner: Optional[Partner] = None

    @property
    def hypothesis(self) -> Optional[Formula]:
        return conjunction(self.parts)


@dataclass
class Split:
    proof: Proof
    cases: List[Case]
    view: TermLines


def term_lines(analysis: ProofAnalysis, e: Eps) -> TermLines:
    info = analysis.terms.get(e)
    if info is None:
        raise PreconditionError(f"{e} is not a critical ε-term of the proof")
    mode = analysis.result.system.eps_equality
    if mode is EqualityMode.UNRESTRICTED:
        raise PreconditionError("Unrestricted ε-equality formulas cannot be eliminated")
    g, args = eps_matrix_of(e)
    view = TermLines(e, g, args, mode, critical=list(info.critical_lines), equalities=list(info.epseq_lines))
    trivial = instantiate(e.body, e)
    for i in info.critical_lines:
        line = analysis.result.lines[i]
        assert line is not None and line.witness is not None
        instance = instantiate(e.body, line.witness)
        if instance is not trivial:
            view.witnesses.setdefault(instance, line.witness)
    for i in info.epseq_lines:
        line = analysis.result.lines[i]
        assert line is not None and line.eps_equality is not None
        eq = line.eps_equality
        if eq.left is eq.right:
            continue
        other = eq.right if eq.left is e else eq.left
        key = (other, eq.position)
        if key in view.partners:
            continue
        vs = eps_matrix_of(other)[1]
        if mode is EqualityMode.POSITIONAL:
            assert eq.position is not None
            hypothesis: Formula = Eq(args[eq.position], vs[eq.position])
        else:
            joined = conjunction([Eq(u, v) for u, v in zip(args, vs)])
            assert joined is not None
            hypothesis = joined
        view.partners[key] = Partner(other, vs, hypothesis, eq.position)
    return view


def plan_cases(view: TermLines) -> List[Case]:
    """Kept case first, then one case per witness, then one per partner."""
    denied = [Not(p.hypothesis) for p in view.partners.values()]
    cases = [Case("kept", denied + [Not(instance) for instance in view.witnesses])]
    for instance, t in view.witnesses.items():
        cases.append(Case("witness", denied + [instance], replacement=t))
    for p in view.partners.values():
        cases.append(Case("partner", [p.hypothesis], replacement=p.term, partner=p))
    return cases


class _CaseProof:
    """Rebuilds the proof under one case hypothesis."""

    def __init__(self, analysis: ProofAnalysis, view: TermLines, case: Case):
        self._analysis = analysis
        self._view = view
        self._case = case
        self._mapping = {view.term: case.replacement} if case.replacement is not None else {}
        hypothesis = case.hypothesis
        axioms = list(analysis.proof.axioms)
        self.b = ProofBuilder(axioms + [hypothesis] if hypothesis is not None else axioms)
        self._parts: Dict[Formula, int] = {}
        self._names: Dict[str, int] = {}
        self._positions: Dict[int, int] = {}
        if hypothesis is None:
            return
        h = self.b.axiom(hypothesis)
        self._parts = {part: derive(self.b, part, [h]) for part in case.parts}
        if case.partner is not None:
            for k, (u, v) in enumerate(zip(view.args, case.partner.args)):
                if u is not v:
                    line = derive(self.b, Eq(u, v), [h])
                    self._names[view.matrix.parameters[k]] = line
                    self._positions[k] = line

    def rep(self, f: Formula) -> Formula:
        return replace(f, self._mapping) if self._mapping else f

    def _critical(self, target: Formula, witness: Term) -> int:
        b, case, view = self.b, self._case, self._view
        assert isinstance(target, Imp)
        if target.left is target.right:
            return b.tautology(target)
        if case.kind == "kept":
            return derive(b, target, [self._parts[Not(instantiate(view.term.body, witness))]])
        if case.kind == "witness":
            assert case.replacement is not None
            return derive(b, target, [self._parts[instantiate(view.term.body, case.replacement)]])
        assert case.partner is not None
        line = transfer_critical(
            b, view.matrix, view.args, case.partner.args, self.rep(witness), self._names, view.mode  # type: ignore[arg-type]
        )
        return derive(b, target, [line])

    def _flips(self, info: LineInfo) -> List[int]:
        assert info.eps_equality is not None
        return [sym_fact(self.b, p.left, p.right) for p in info.eps_equality.premises]

    def _equality(self, target: Formula, info: LineInfo) -> int:
        b, case, view = self.b, self._case, self._view
        eq = info.eps_equality
        assert eq is not None and isinstance(target, Imp) and isinstance(target.right, Eq)
        if target.right.left is target.right.right:
            return derive(b, target, [refl(b, target.right.left)])
        reversed_ = eq.right is view.term
        other = eq.left if reversed_ else eq.right
        partner = view.partners[(other, eq.position)]
        flips = self._flips(info) if reversed_ else []
        if case.kind != "partner":
            return derive(b, target, [self._parts[Not(partner.hypothesis)]] + flips)
        assert case.partner is not None
        canonical = equate_instances(
            b, view.matrix, view.args, case.partner.args, partner.args, self._positions, view.mode
        )
        if reversed_:
            flips.append(sym_fact(b, case.partner.term, partner.term))
        return derive(b, target, [canonical] + flips)

    def build(self) -> Proof:
        b, view = self.b, self._view
        proof = self._analysis.proof
        infos = self._analysis.result.lines
        out: List[int] = []
        for line, info in zip(proof.lines, infos):
            assert info is not None
            f, j = line.formula, line.justification
            target = self.rep(f)
            if info.kind == "critical" and info.term is view.term:
                assert info.witness is not None
                out.append(self._critical(target, info.witness))
            elif info.kind == "epseq" and view.term in info.belongs_to:
                out.append(self._equality(target, info))
            elif isinstance(j, ModusPonens):
                out.append(b.mp(out[j.minor], out[j.major]))
            elif isinstance(j, Axiom):
                out.append(b.axiom(f))
            elif isinstance(j, Critical):
                assert info.term is not None and info.witness is not None
                out.append(b.add(target, Critical(self.rep(info.term), self.rep(info.witness))))  # type: ignore[arg-type]
            elif isinstance(j, Tautology):
                out.append(b.tautology(target))
            else:
                out.append(b.add(target, j))
        result = b.build(self.rep(proof.conclusion))
        hypothesis = self._case.hypothesis
        if hypothesis is None:
            return result
        return discharge(result, hypothesis)


def _check_preconditions(analysis: ProofAnalysis, view: TermLines, cases: Sequence[Case]) -> None:
    axioms = analysis.proof.axioms
    for a in axioms:
        if occurs(view.term, a):
            raise PreconditionError(f"Axiom {a} mentions the eliminated term {view.term}")
    for case in cases:
        hypothesis = case.hypothesis
        if hypothesis is not None and any(a is hypothesis for a in axioms):
            raise PreconditionError(f"Case hypothesis {hypothesis} is already an axiom")


def split_on(analysis: ProofAnalysis, e: Eps, goal: Optional[Formula] = None, workers: int = 1) -> Split:
    """Eliminate ``e`` from the proof by cases; ``goal`` must contain every case conclusion."""
    view = term_lines(analysis, e)
    cases = plan_cases(view)
    _check_preconditions(analysis, view, cases)
    logger.debug(
        f"Splitting on {e}: {len(view.witnesses)} witness(es), {len(view.partners)} partner(s), {len(cases)} case(s)"
    )

    if not view.witnesses and not view.partners:
        return Split(_CaseProof(analysis, view, cases[0]).build(), cases, view)

    def build(case: Case) -> Proof:
        return _CaseProof(analysis, view, case).build()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(contextvars.copy_context().run, build, case) for case in cases]
            proofs = [future.result() for future in futures]
    else:
        proofs = [build(case) for case in cases]

    if goal is None:
        goal = analysis.proof.conclusion
    return Split(combine_cases(proofs, goal), cases, view)
