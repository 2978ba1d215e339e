from pathlib import Path

import pytest

from epsiverse.errors import PreconditionError, ProofCheckError
from epsiverse.kernel import eps_translate, parse_formula, parse_term, substitute
from epsiverse.proofsys import EC_EPS_EQ, PC_EQ, Critical, analyze, check_proof, is_regular, parse_proof, read_proof
from epsiverse.translate import prenex_witnesses, quantifier_witness, translate_proof, translated_body

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
QUANTIFIER_PROOFS = sorted(CORPUS.glob("pc-*.eproof"))


def test_corpus_has_enough_quantifier_proofs():
    assert len(QUANTIFIER_PROOFS) >= 10


@pytest.mark.parametrize("path", QUANTIFIER_PROOFS, ids=lambda p: p.stem)
def test_translation_checks_without_raising_the_critical_count(path):
    proof = read_proof(path)
    translated = translate_proof(proof)
    result = check_proof(EC_EPS_EQ, translated)
    assert result.ok, result.diagnostics
    assert translated.conclusion is eps_translate(proof.conclusion)
    assert not any(f.has_quant for f in translated.formulas())
    assert result.report.cc <= analyze(PC_EQ, proof).report.cc


def test_translations_of_the_quantified_theorems_match_the_epsilon_proofs():
    for name in ("ip", "drinker"):
        translated = translate_proof(read_proof(CORPUS / f"pc-{name}.eproof"))
        assert translated.conclusion is read_proof(CORPUS / f"{name}.eproof").conclusion


def test_quantifier_axioms_become_critical_formulas():
    proof = parse_proof("1. (forall x. P(x)) -> P(C) ; allminus\n")
    translated = translate_proof(proof)
    e = parse_term("eps x. ~P(x)")
    assert translated.conclusion is parse_formula("P(eps x. ~P(x)) -> P(C)")
    critical = [line for line in translated.lines if isinstance(line.justification, Critical)]
    assert [line.formula for line in critical] == [parse_formula("~P(C) -> ~P(eps x. ~P(x))")]
    assert critical[0].justification.term is e


def test_vacuous_quantifiers_translate_to_tautologies():
    proof = parse_proof("1. (forall x. Q) -> Q ; allminus\n")
    translated = translate_proof(proof)
    assert check_proof(EC_EPS_EQ, translated).ok
    assert analyze(EC_EPS_EQ, translated).report.cc == 0


def test_eigenvariables_are_replaced_by_witnesses():
    translated = translate_proof(read_proof(CORPUS / "pc-forall-weaken.eproof"))
    assert all("a" not in f.free_vars for f in translated.formulas())


def test_eigenvariables_outside_the_premise_are_substituted_consistently():
    proof = parse_proof(
        "1. P(a) -> P(a) ; taut\n"
        "2. Q(C) -> P(a) | ~P(a) ; taut\n"
        "3. Q(C) -> forall x. (P(x) | ~P(x)) ; allplus 2 a\n"
    )
    assert check_proof(PC_EQ, proof).ok
    translated = translate_proof(proof)
    result = check_proof(EC_EPS_EQ, translated)
    assert result.ok, result.diagnostics
    assert translated.conclusion is eps_translate(proof.conclusion)
    assert all("a" not in f.free_vars for f in translated.formulas())


def test_reused_eigenvariables_are_regularized_first():
    proof = parse_proof(
        "1. (forall x. P(x)) -> P(a) ; allminus\n"
        "2. (forall x. P(x)) -> forall x. P(x) ; allplus 1 a\n"
        "3. (forall x. Q(x)) -> Q(a) ; allminus\n"
        "4. (forall x. Q(x)) -> forall x. Q(x) ; allplus 3 a\n"
    )
    assert not is_regular(proof)
    translated = translate_proof(proof)
    assert check_proof(EC_EPS_EQ, translated).ok
    assert translated.conclusion is eps_translate(proof.conclusion)


def test_invalid_source_proofs_are_rejected():
    proof = parse_proof("1. P(C) -> exists x. Q(x) ; explus\n")
    with pytest.raises(ProofCheckError):
        translate_proof(proof)


def test_witness_terms():
    universal = parse_formula("forall x. P(x) -> exists y. R(x, y)")
    assert translated_body(universal) is parse_term("eps x. P(x) -> R(x, eps y. R(x, y))").body
    assert quantifier_witness(universal) is parse_term("eps x. ~(P(x) -> R(x, eps y. R(x, y)))")
    assert quantifier_witness(parse_formula("exists x. P(x)")) is parse_term("eps x. P(x)")


def test_prenex_witnesses():
    formula = parse_formula("exists x. exists y. R(x, y) | P(C)")
    matrix, holes, terms = prenex_witnesses(formula)
    assert len(holes) == 2
    assert not matrix.has_quant and not matrix.has_eps
    assert substitute(matrix, dict(zip(holes, terms))) is eps_translate(formula)


def test_prenex_witnesses_drop_vacuous_quantifiers():
    matrix, holes, terms = prenex_witnesses(parse_formula("exists x. P(C)"))
    assert matrix is parse_formula("P(C)")
    assert holes == ()
    assert terms == ()


def test_prenex_witnesses_need_a_quantifier_free_matrix():
    with pytest.raises(PreconditionError):
        prenex_witnesses(parse_formula("exists x. A(x) -> forall y. A(y)"))
