"""Compile PC+EQ proofs into EC_ε+EQ proofs of the ε-translation.

Quantifier axioms become critical formulas. Generalization rules vanish: their
eigenvariables are replaced, once and globally, by the ε-terms the translation
of the generalized formula introduces.
"""

import logging
from typing import Dict, List, Tuple, Union

from .errors import PreconditionError
from .kernel import (
    VACUOUS,
    Eps,
    Exists,
    Forall,
    Formula,
    Imp,
    Not,
    Term,
    abstract,
    eps_translate,
    fresh_names,
    instantiate,
    match,
    match_instance,
    open_binder,
    substitute,
)
from .proofsys import (
    PC_EQ,
    Axiom,
    Critical,
    EqAxiom,
    ExistsMinus,
    ExistsPlus,
    ForallMinus,
    ForallPlus,
    Justification,
    Line,
    ModusPonens,
    Proof,
    ProofBuilder,
    Tautology,
    derive,
    regularize,
    verify,
)

logger = logging.getLogger(__name__)


def translated_body(q: Union[Forall, Exists]) -> Formula:
    """The translated body ``B^ε(x)`` of a quantified formula, its binder left open."""
    body, v = open_binder(q)
    return abstract(eps_translate(body), v.name)


def quantifier_witness(q: Union[Forall, Exists]) -> Eps:
    """``ε_x ¬B^ε(x)`` for a universal, ``ε_x B^ε(x)`` for an existential formula."""
    bx = translated_body(q)
    return Eps(Not(bx) if isinstance(q, Forall) else bx, q.hint)


def _forall_minus(b: ProofBuilder, f: Formula) -> int:
    assert isinstance(f, Imp) and isinstance(f.left, Forall)
    translated = eps_translate(f)
    assert isinstance(translated, Imp)
    t = match_instance(f.left.body, f.right)
    if t is VACUOUS or translated.left is translated.right:
        return b.tautology(translated)
    assert isinstance(t, Term)
    bx = translated_body(f.left)
    e = quantifier_witness(f.left)
    critical = b.add(Imp(Not(instantiate(bx, t)), Not(instantiate(bx, e))), Critical(e, t))
    return derive(b, translated, [critical])


def _exists_plus(b: ProofBuilder, f: Formula) -> int:
    assert isinstance(f, Imp) and isinstance(f.right, Exists)
    translated = eps_translate(f)
    assert isinstance(translated, Imp)
    t = match_instance(f.right.body, f.left)
    if t is VACUOUS or translated.left is translated.right:
        return b.tautology(translated)
    assert isinstance(t, Term)
    return b.add(translated, Critical(quantifier_witness(f.right), t))


def _substituted(j: Justification, mapping: Dict[str, Term]) -> Justification:
    if isinstance(j, Critical) and j.term is not None and j.witness is not None:
        return Critical(substitute(j.term, mapping), substitute(j.witness, mapping))
    return j


def translate_proof(proof: Proof) -> Proof:
    """A proof of ``eps_translate(A)`` in EC_ε+EQ from a PC+EQ proof of ``A``.

    Eigenvariables are replaced by their ε-witnesses in every line, not in a copy of
    the premise's subproof. Every EC_ε+EQ axiom stays an axiom under substitution
    for a free variable, and regularization keeps eigenvariables out of the
    conclusion, so the end formula is unchanged.
    """
    verify(PC_EQ, proof)
    proof = regularize(proof, reserved=proof.conclusion.free_vars)

    b = ProofBuilder([eps_translate(a) for a in proof.axioms])
    out: List[int] = []
    generalized: List[Tuple[str, Union[Forall, Exists]]] = []
    for line in proof.lines:
        f, j = line.formula, line.justification
        match j:
            case Tautology():
                out.append(b.tautology(eps_translate(f)))
            case EqAxiom():
                out.append(b.add(eps_translate(f), j))
            case Axiom():
                out.append(b.axiom(eps_translate(f)))
            case ModusPonens(minor, major):
                out.append(b.add(eps_translate(f), ModusPonens(out[minor], out[major])))
            case ForallMinus():
                out.append(_forall_minus(b, f))
            case ExistsPlus():
                out.append(_exists_plus(b, f))
            case ForallPlus(premise, eigenvariable):
                assert isinstance(f, Imp) and isinstance(f.right, Forall)
                generalized.append((eigenvariable, f.right))
                out.append(out[premise])
            case ExistsMinus(premise, eigenvariable):
                assert isinstance(f, Imp) and isinstance(f.left, Exists)
                generalized.append((eigenvariable, f.left))
                out.append(out[premise])
            case _:
                raise PreconditionError(f"Line justified by {j!r} is not a PC+EQ inference")

    # eigenvariable k is replaced by its witness taken after the replacements before it
    mapping: Dict[str, Term] = {}
    for eigenvariable, quantified in generalized:
        witness = substitute(quantifier_witness(quantified), mapping)
        mapping = {name: substitute(t, {eigenvariable: witness}) for name, t in mapping.items()}
        mapping[eigenvariable] = witness

    lines = [Line(substitute(line.formula, mapping), _substituted(line.justification, mapping)) for line in b.lines]
    if out[-1] != len(lines) - 1:
        lines.append(lines[out[-1]])
    result = Proof(tuple(b.axioms), tuple(lines))
    logger.info(f"Translated a proof of {len(proof)} lines into {len(result)} lines")
    return result


def prenex_witnesses(formula: Formula) -> Tuple[Formula, Tuple[str, ...], Tuple[Term, ...]]:
    """Split ``exists x1...xn. E(x)`` into ``E(a)`` and terms ``s`` with ``eps_translate(formula) = E(s)``.

    Placeholders for vacuous quantifiers are dropped.
    """
    names: List[str] = []
    body: Formula = formula
    while isinstance(body, Exists):
        name = fresh_names.fresh("_h", formula.free_vars)
        body, _ = open_binder(body, name)
        names.append(name)
    if body.has_quant or body.has_eps:
        raise PreconditionError("Not a prenex existential formula with a quantifier-free, ε-free matrix")
    holes = tuple(n for n in names if n in body.free_vars)
    binding = match(body, eps_translate(formula), holes)
    assert binding is not None
    return body, holes, tuple(binding[n] for n in holes)
