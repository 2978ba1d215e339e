"""Line-by-line proof checking against a system of the lattice."""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from ..errors import ArityError, Diagnostic, ProofCheckError
from ..kernel import Eps, Exists, Forall, Formula, Imp, Term, Var, check_arities, instantiate
from .proof import (
    Axiom,
    Critical,
    EpsEquality,
    EqAxiom,
    ExistsMinus,
    ExistsPlus,
    ForallMinus,
    ForallPlus,
    ModusPonens,
    Proof,
    Tautology,
    references,
)
from .recognizers import (
    EpsEqualityInfo,
    eq_axiom_kind,
    is_critical,
    is_exists_plus,
    is_forall_minus,
    recognize_critical,
    recognize_eps_equality,
)
from .measures import MeasureReport, compute_report
from .system import EqualityMode, System
from .tautology import is_tautology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineInfo:
    """What a checked line turned out to be."""

    kind: str
    term: Optional[Eps] = None
    witness: Optional[Term] = None
    eps_equality: Optional[EpsEqualityInfo] = None
    eq_kind: Optional[str] = None

    @property
    def belongs_to(self) -> Tuple[Eps, ...]:
        """Critical ε-terms this line belongs to."""
        if self.kind == "critical" and self.term is not None:
            return (self.term,)
        if self.kind == "epseq" and self.eps_equality is not None:
            info = self.eps_equality
            if info.left is info.right:
                return (info.left,)
            return (info.left, info.right)
        return ()


@dataclass
class CheckResult:
    system: System
    proof: Proof
    ok: bool
    diagnostics: List[Diagnostic] = field(default_factory=list)
    lines: List[Optional[LineInfo]] = field(default_factory=list)
    report: Optional[MeasureReport] = None

    def raise_for_errors(self) -> "CheckResult":
        if not self.ok:
            raise ProofCheckError(self.diagnostics)
        return self


def _axiom_variables(proof: Proof) -> FrozenSet[str]:
    acc: FrozenSet[str] = frozenset()
    for a in proof.axioms:
        acc = acc | a.free_vars
    return acc


def _check_line(system: System, proof: Proof, index: int, gamma_vars: FrozenSet[str]) -> LineInfo:
    line = proof.lines[index]
    f, j = line.formula, line.justification
    for ref in references(j):
        if not 0 <= ref < index:
            raise _Reject(f"reference to line {ref} does not precede line {index}")
    violation = system.language_violation(f)
    if violation is not None:
        raise _Reject(violation)

    match j:
        case Tautology():
            if not is_tautology(f):
                raise _Reject("not a propositional tautology")
            return LineInfo("taut")
        case EqAxiom(kind):
            if not system.equality:
                raise _Reject(f"EQ axioms are not available in {system.name}")
            found = eq_axiom_kind(f, kind)
            if found is None:
                raise _Reject(f"not an instance of the {kind or 'EQ'} schema")
            return LineInfo("eq", eq_kind=found)
        case Critical(term, witness):
            if not system.epsilon:
                raise _Reject(f"critical formulas are not available in {system.name}")
            if term is not None and witness is not None:
                if not is_critical(f, term, witness):
                    raise _Reject(f"not the critical formula of {term!r} at {witness!r}")
                return LineInfo("critical", term=term, witness=witness)
            found_critical = recognize_critical(f)
            if found_critical is None or (term is not None and found_critical[0] is not term):
                raise _Reject("not a critical formula")
            return LineInfo("critical", term=found_critical[0], witness=found_critical[1])
        case EpsEquality(position):
            if system.eps_equality is EqualityMode.NONE:
                raise _Reject(f"ε-equality formulas are not available in {system.name}")
            info = recognize_eps_equality(f, system.eps_equality, position)
            if info is None:
                raise _Reject(f"not an ε-equality formula in {system.eps_equality.value} mode")
            return LineInfo("epseq", eps_equality=info)
        case ForallMinus():
            if not system.quantifiers or not is_forall_minus(f):
                raise _Reject("not a ∀⁻ instance")
            return LineInfo("allminus")
        case ExistsPlus():
            if not system.quantifiers or not is_exists_plus(f):
                raise _Reject("not an ∃⁺ instance")
            return LineInfo("explus")
        case ForallPlus(premise, eigenvariable):
            if not system.quantifiers:
                raise _Reject(f"∀⁺ is not available in {system.name}")
            _check_generalization(proof.lines[premise].formula, f, eigenvariable, gamma_vars, universal=True)
            return LineInfo("allplus")
        case ExistsMinus(premise, eigenvariable):
            if not system.quantifiers:
                raise _Reject(f"∃⁻ is not available in {system.name}")
            _check_generalization(proof.lines[premise].formula, f, eigenvariable, gamma_vars, universal=False)
            return LineInfo("exminus")
        case ModusPonens(minor, major):
            major_formula = proof.lines[major].formula
            if not (
                isinstance(major_formula, Imp)
                and major_formula.left is proof.lines[minor].formula
                and major_formula.right is f
            ):
                raise _Reject(f"modus ponens does not apply to lines {minor} and {major}")
            return LineInfo("mp")
        case Axiom(k):
            if not 0 <= k < len(proof.axioms) or proof.axioms[k] is not f:
                raise _Reject(f"not axiom {k}")
            return LineInfo("axiom")
        case _:
            raise _Reject(f"unknown justification {j!r}")


def _check_generalization(
    premise: Formula, conclusion: Formula, eigenvariable: str, gamma_vars: FrozenSet[str], universal: bool
) -> None:
    rule = "∀⁺" if universal else "∃⁻"
    if not isinstance(premise, Imp) or not isinstance(conclusion, Imp):
        raise _Reject(f"{rule} needs implications as premise and conclusion")
    if universal:
        side, instance, quantified = premise.left is conclusion.left, premise.right, conclusion.right
        expected: type = Forall
    else:
        side, instance, quantified = premise.right is conclusion.right, premise.left, conclusion.left
        expected = Exists
    if not side or not isinstance(quantified, expected):
        raise _Reject(f"{rule} conclusion does not match its premise")
    assert isinstance(quantified, (Forall, Exists))
    if instantiate(quantified.body, Var(eigenvariable)) is not instance:
        raise _Reject(f"{rule} premise is not an instance at eigenvariable {eigenvariable}")
    if eigenvariable in conclusion.free_vars:
        raise _Reject(f"eigenvariable {eigenvariable} occurs in the conclusion")
    if eigenvariable in gamma_vars:
        raise _Reject(f"eigenvariable {eigenvariable} occurs in an axiom")


class _Reject(Exception):
    pass


def check_proof(system: System, proof: Proof, measure: bool = True) -> CheckResult:
    """Check every line of ``proof`` under ``system``; on success attach the measures."""
    result = CheckResult(system, proof, ok=True)
    for k, axiom in enumerate(proof.axioms):
        violation = system.language_violation(axiom)
        if violation is not None:
            result.diagnostics.append(Diagnostic(-1, f"axiom {k}: {violation}"))
    try:
        check_arities(list(proof.axioms) + proof.formulas())
    except ArityError as e:
        result.diagnostics.append(Diagnostic(-1, str(e)))

    gamma_vars = _axiom_variables(proof)
    for i in range(len(proof.lines)):
        try:
            result.lines.append(_check_line(system, proof, i, gamma_vars))
        except _Reject as e:
            logger.debug(f"Line {i} rejected: {e}")
            result.diagnostics.append(Diagnostic(i, str(e)))
            result.lines.append(None)

    if not proof.lines:
        result.diagnostics.append(Diagnostic(-1, "empty proof"))
    result.ok = not result.diagnostics
    if result.ok and measure:
        result.report = compute_report(result)
    return result


def verify(system: System, proof: Proof) -> CheckResult:
    return check_proof(system, proof).raise_for_errors()
