"""Whole-proof transformations: slicing, regularization, deduction and case combination."""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..errors import PreconditionError
from ..kernel import And, Formula, Imp, Term, Var, disjunction, format_formula, fresh_names, substitute
from .derivations import derive
from .proof import (
    Axiom,
    Critical,
    ExistsMinus,
    ForallPlus,
    Justification,
    Line,
    ModusPonens,
    Proof,
    ProofBuilder,
    references,
    reindex,
)
from .tautology import is_tautology

logger = logging.getLogger(__name__)


def slice_of(proof: Proof, index: int) -> List[int]:
    """Indices of the lines ``index`` depends on, itself included, in proof order."""
    needed: Set[int] = {index}
    for i in range(index, -1, -1):
        if i in needed:
            needed.update(references(proof.lines[i].justification))
    return sorted(needed)


def proof_variables(proof: Proof) -> Set[str]:
    names: Set[str] = set()
    for f in list(proof.axioms) + proof.formulas():
        names |= f.free_vars
    for line in proof.lines:
        if isinstance(line.justification, (ForallPlus, ExistsMinus)):
            names.add(line.justification.eigenvariable)
    return names


def is_regular(proof: Proof) -> bool:
    seen: Set[str] = set()
    for line in proof.lines:
        j = line.justification
        if isinstance(j, (ForallPlus, ExistsMinus)):
            if j.eigenvariable in seen:
                return False
            seen.add(j.eigenvariable)
    return True


def _rename_justification(j: Justification, renaming: Dict[str, Term]) -> Justification:
    if isinstance(j, Critical) and j.term is not None:
        witness = substitute(j.witness, renaming) if j.witness is not None else None
        return Critical(substitute(j.term, renaming), witness)
    return j


def regularize(proof: Proof, reserved: Iterable[str] = ()) -> Proof:
    """Give every ∀⁺/∃⁻ use its own eigenvariable, avoiding ``reserved`` names.

    A reused eigenvariable is renamed in a copy of the lines of the premise's
    derivation that mention it; lines not mentioning it are shared.
    """
    reserved_names = frozenset(reserved)
    if is_regular(proof) and not any(
        isinstance(line.justification, (ForallPlus, ExistsMinus)) and line.justification.eigenvariable in reserved_names
        for line in proof.lines
    ):
        return proof
    avoid = proof_variables(proof) | reserved_names
    lines: List[Line] = []
    mapping: List[int] = []
    copies: Dict[Tuple[int, Tuple[Tuple[str, str], ...]], int] = {}

    def fresh(old: str) -> str:
        name = fresh_names.fresh(old.rstrip("0123456789") or "_e", avoid)
        avoid.add(name)
        return name

    def emit(formula: Formula, j: Justification) -> int:
        lines.append(Line(formula, j))
        return len(lines) - 1

    def copy(k: int, renaming: Dict[str, str]) -> int:
        src = proof.lines[k]
        if src.formula.free_vars.isdisjoint(renaming):
            return mapping[k]
        key = (k, tuple(sorted(renaming.items())))
        known = copies.get(key)
        if known is not None:
            return known
        terms: Dict[str, Term] = {old: Var(new) for old, new in renaming.items()}
        j = src.justification
        formula = substitute(src.formula, terms)
        if isinstance(j, ModusPonens):
            index = emit(formula, ModusPonens(copy(j.minor, renaming), copy(j.major, renaming)))
        elif isinstance(j, (ForallPlus, ExistsMinus)):
            inner = fresh(j.eigenvariable)
            premise = copy(j.premise, {**renaming, j.eigenvariable: inner})
            index = emit(formula, type(j)(premise, inner))
        else:
            index = emit(formula, _rename_justification(j, terms))
        copies[key] = index
        return index

    used: Set[str] = set(reserved_names)
    for line in proof.lines:
        j = line.justification
        if isinstance(j, (ForallPlus, ExistsMinus)) and j.eigenvariable in used:
            new = fresh(j.eigenvariable)
            logger.debug(f"Renamed reused eigenvariable {j.eigenvariable} to {new}")
            mapping.append(emit(line.formula, type(j)(copy(j.premise, {j.eigenvariable: new}), new)))
            used.add(new)
            continue
        mapping.append(emit(line.formula, reindex(j, mapping)))
        if isinstance(j, (ForallPlus, ExistsMinus)):
            used.add(j.eigenvariable)
    return Proof(proof.axioms, tuple(lines))


def _dependent_on(proof: Proof, hypothesis: Formula) -> List[bool]:
    dependent: List[bool] = []
    for line in proof.lines:
        j = line.justification
        if isinstance(j, Axiom):
            dependent.append(proof.axioms[j.index] is hypothesis)
        else:
            dependent.append(any(dependent[r] for r in references(j)))
    return dependent


def deduction_transform(proof: Proof, hypothesis: Formula) -> Proof:
    """Discharge the closed ``hypothesis`` from the axioms: a proof of ``B`` becomes a proof of ``hypothesis -> B``."""
    if hypothesis.free_vars:
        raise PreconditionError(f"Hypothesis {format_formula(hypothesis)} is not closed")
    return discharge(proof, hypothesis)


def discharge(proof: Proof, hypothesis: Formula) -> Proof:
    """Deduction for hypotheses with free variables, none of them an eigenvariable of a dependent line."""
    dependent = _dependent_on(proof, hypothesis)
    for line, dep in zip(proof.lines, dependent):
        j = line.justification
        if dep and isinstance(j, (ForallPlus, ExistsMinus)) and j.eigenvariable in hypothesis.free_vars:
            raise PreconditionError(
                f"Eigenvariable {j.eigenvariable} of a dependent generalization occurs in the hypothesis"
            )
    b = ProofBuilder([a for a in proof.axioms if a is not hypothesis])
    out: List[int] = []
    for line, dep in zip(proof.lines, dependent):
        f, j = line.formula, line.justification
        if not dep:
            if isinstance(j, Axiom):
                out.append(b.axiom(f))
            else:
                out.append(b.add(f, reindex(j, out)))
            continue
        if isinstance(j, Axiom):
            out.append(b.tautology(Imp(hypothesis, hypothesis)))
        elif isinstance(j, ModusPonens):
            out.append(derive(b, Imp(hypothesis, f), [out[j.minor], out[j.major]]))
        elif isinstance(j, ForallPlus):
            premise = proof.lines[j.premise].formula
            assert isinstance(premise, Imp) and isinstance(f, Imp)
            merged = derive(b, Imp(And(hypothesis, premise.left), premise.right), [out[j.premise]])
            general = b.add(Imp(And(hypothesis, premise.left), f.right), ForallPlus(merged, j.eigenvariable))
            out.append(derive(b, Imp(hypothesis, f), [general]))
        elif isinstance(j, ExistsMinus):
            premise = proof.lines[j.premise].formula
            assert isinstance(premise, Imp) and isinstance(f, Imp)
            swapped = derive(b, Imp(premise.left, Imp(hypothesis, premise.right)), [out[j.premise]])
            general = b.add(Imp(f.left, Imp(hypothesis, f.right)), ExistsMinus(swapped, j.eigenvariable))
            out.append(derive(b, Imp(hypothesis, f), [general]))
        else:
            raise AssertionError(f"Line justified by {j!r} cannot depend on a hypothesis")

    goal = Imp(hypothesis, proof.conclusion)
    if not dependent[-1]:
        derive(b, goal, [out[-1]])
    return b.build(goal)


def case_premise(case: Proof) -> Formula:
    f = case.conclusion
    if not isinstance(f, Imp):
        raise PreconditionError(f"Case proof does not end in an implication: {f!r}")
    return f.left


def combine_cases(cases: Sequence[Proof], goal: Optional[Formula] = None) -> Proof:
    """Merge proofs of ``C_i -> G_i`` into one proof of ``goal`` when the ``C_i`` cover all cases.

    ``goal`` defaults to the common ``G_i``; it must contain every ``G_i`` as a subformula
    so that the closing step is propositional.
    """
    if not cases:
        raise PreconditionError("No cases to combine")
    axioms = cases[0].axioms
    if any(c.axioms != axioms for c in cases):
        raise PreconditionError("Case proofs use different axioms")
    premises = [case_premise(c) for c in cases]
    cover = disjunction(premises)
    assert cover is not None
    if not is_tautology(cover):
        raise PreconditionError("Case premises do not cover all cases")
    if goal is None:
        conclusions = {id(c.conclusion.right) for c in cases if isinstance(c.conclusion, Imp)}
        if len(conclusions) != 1:
            raise PreconditionError("Cases prove different formulas and no combined goal was given")
        conclusion = cases[0].conclusion
        assert isinstance(conclusion, Imp)
        goal = conclusion.right

    b = ProofBuilder(axioms)
    ends = []
    for c in cases:
        mapping = b.include(c)
        ends.append(mapping[-1])
    derive(b, goal, ends)
    logger.debug(f"Combined {len(cases)} cases into a proof of {len(b)} lines")
    return b.build(goal)
