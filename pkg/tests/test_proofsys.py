from pathlib import Path

import pytest

from epsiverse.config import EliminationConfig, ResourceLimits, TautologyConfig, applied
from epsiverse.errors import ParseError, PreconditionError, ProofCheckError, ResourceLimitError
from epsiverse.kernel import Eq, const, eps_matrix_of, eps_translate, parse_formula, parse_term
from epsiverse.proofsys import (
    EC,
    EC_EPS,
    EC_EPS_EQ,
    EC_EPS_EQ1,
    EC_EPS_EQ_U,
    EC_EQ,
    PC,
    PC_EQ,
    Critical,
    EpsEquality,
    EqAxiom,
    EqualityMode,
    ProofBuilder,
    analyze,
    check_proof,
    closure_of,
    combine_cases,
    deduction_transform,
    derive,
    discharge,
    eq_chain,
    format_proof,
    generalize_closed,
    is_regular,
    is_tautology,
    parse_justification,
    parse_proof,
    read_proof,
    recognize_critical,
    recognize_eps_equality,
    recognize_tautology,
    regularize,
    slice_of,
    system_by_name,
    verify,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_proof(name: str):
    return read_proof(CORPUS / f"{name}.eproof")


def proof_of(*lines: str, axioms=()):
    text = "".join(f"axiom: {a}\n" for a in axioms)
    text += "".join(f"{i}. {line}\n" for i, line in enumerate(lines, start=1))
    return parse_proof(text)


@pytest.mark.parametrize(
    "name, system, cc",
    [
        ("ip", EC_EPS, 1),
        ("drinker", EC_EPS, 1),
        ("first-critical", EC_EPS, 1),
        ("first-epseq", EC_EPS_EQ, 2),
    ],
)
def test_corpus_epsilon_proofs_check(name, system, cc):
    result = check_proof(system, corpus_proof(name))
    assert result.ok, result.diagnostics
    assert result.report.cc == cc


@pytest.mark.parametrize("path", sorted(CORPUS.glob("pc-*.eproof")), ids=lambda p: p.stem)
def test_corpus_quantifier_proofs_check(path):
    result = check_proof(PC_EQ, read_proof(path))
    assert result.ok, result.diagnostics


def test_translated_theorems_match_their_quantified_forms():
    ip = parse_formula("(A -> exists x. B(x)) -> exists x. A -> B(x)")
    drinker = parse_formula("exists x. A(x) -> forall y. A(y)")
    assert corpus_proof("ip").conclusion is eps_translate(ip)
    assert corpus_proof("drinker").conclusion is eps_translate(drinker)
    assert corpus_proof("pc-ip").conclusion is ip
    assert corpus_proof("pc-drinker").conclusion is drinker


def test_epsilon_lines_are_rejected_without_epsilon():
    result = check_proof(EC, corpus_proof("ip"))
    assert not result.ok
    assert any("not in the language" in d.message or "not available" in d.message for d in result.diagnostics)
    with pytest.raises(ProofCheckError):
        verify(EC, corpus_proof("ip"))


def test_bad_modus_ponens_is_reported_with_its_line():
    proof = proof_of("A -> A ; taut", "B -> B ; taut", "A ; mp 1 2")
    result = check_proof(EC, proof)
    assert not result.ok
    assert [d.line for d in result.diagnostics] == [2]


def test_forward_references_are_rejected():
    proof = proof_of("A ; mp 2 2", "A -> A ; taut")
    assert not check_proof(EC, proof).ok


def test_eigenvariable_may_not_occur_in_the_conclusion():
    proof = proof_of("P(a) -> P(a) ; taut", "P(a) -> forall x. P(x) ; allplus 1 a")
    result = check_proof(PC, proof)
    assert not result.ok
    assert "occurs in the conclusion" in result.diagnostics[0].message


def test_eigenvariable_may_not_occur_in_an_axiom():
    proof = proof_of(
        "(forall x. P(x)) -> P(a) ; allminus",
        "(forall x. P(x)) -> forall x. P(x) ; allplus 1 a",
        axioms=["Q(a)"],
    )
    result = check_proof(PC, proof)
    assert not result.ok
    assert "axiom" in result.diagnostics[0].message


def test_critical_formula_with_explicit_term_and_witness():
    proof = proof_of("P(C) -> P(eps x. P(x)) ; crit[eps x. P(x), C]")
    assert check_proof(EC_EPS, proof).ok
    wrong = proof_of("P(C) -> P(eps x. P(x)) ; crit[eps x. P(x), D]")
    assert not check_proof(EC_EPS, wrong).ok


def test_vacuous_critical_formula():
    proof = proof_of("Q -> Q ; crit")
    # no ε-term occurs, so nothing is critical
    assert not check_proof(EC_EPS, proof).ok
    assert check_proof(EC, proof_of("Q -> Q ; taut")).ok


@pytest.mark.parametrize(
    "formula, kind",
    [
        ("C = C", "refl"),
        ("C = D -> D = C", "sym"),
        ("C = D -> D = E -> C = E", "trans"),
        ("C = D & E = F -> P(C, E) -> P(D, F)", "pred"),
        ("C = D -> f(C) = f(D)", "fn"),
    ],
)
def test_eq_axiom_schemas(formula, kind):
    proof = proof_of(f"{formula} ; eq[{kind}]")
    result = check_proof(EC_EQ, proof)
    assert result.ok, result.diagnostics
    assert result.lines[0].eq_kind == kind
    assert check_proof(EC_EQ, proof_of(f"{formula} ; eq")).ok


def test_eq_axioms_need_equality():
    assert not check_proof(EC, proof_of("C = C ; eq")).ok


def test_matrix_eps_equality_needs_every_parameter():
    both = "C = D -> U = V -> (eps x. R(x, C, U)) = (eps x. R(x, D, V)) ; epseq"
    assert check_proof(EC_EPS_EQ, proof_of(both)).ok
    conjoined = "C = D & U = V -> (eps x. R(x, C, U)) = (eps x. R(x, D, V)) ; epseq"
    assert check_proof(EC_EPS_EQ, proof_of(conjoined)).ok
    one = "U = V -> (eps x. R(x, C, U)) = (eps x. R(x, C, V)) ; epseq"
    assert not check_proof(EC_EPS_EQ, proof_of(one)).ok


def test_positional_eps_equality_changes_one_parameter():
    one = "U = V -> (eps x. R(x, C, U)) = (eps x. R(x, C, V)) ; epseq[1]"
    result = check_proof(EC_EPS_EQ1, proof_of(one))
    assert result.ok, result.diagnostics
    assert result.lines[0].eps_equality.position == 1
    assert not check_proof(EC_EPS_EQ1, proof_of(one.replace("epseq[1]", "epseq[0]"))).ok


def test_unrestricted_eps_equality_accepts_deep_differences():
    deep = "U = V -> (eps x. x = g(U)) = (eps x. x = g(V)) ; epseq"
    assert check_proof(EC_EPS_EQ_U, proof_of(deep)).ok
    assert not check_proof(EC_EPS_EQ, proof_of(deep)).ok


def test_eps_equality_needs_an_eps_equality_system():
    proof = corpus_proof("first-epseq")
    assert not check_proof(EC_EPS, proof).ok


def test_measures_of_the_epseq_example():
    report = analyze(EC_EPS_EQ, corpus_proof("first-epseq")).report
    assert report.cc == 2
    assert report.cc_eps == 1
    assert report.cc_eq == 1
    assert report.cc_quant == 0
    assert report.rank == 1
    assert report.order == {1: 2}
    assert report.matrix_order == {1: 1}
    assert report.mwd == {1: 2}
    assert report.ma == {1: 1}
    assert report.mpd == {1: 0}
    assert report.cr == frozenset({1})
    assert report.max_arity == 1
    assert report.order_at(2) == 0
    data = report.to_dict()
    assert data["order"] == {"1": 2}
    assert data["cr"] == [1]
    assert "closures" not in data


def test_measures_of_the_drinker():
    analysis = analyze(EC_EPS, corpus_proof("drinker"))
    report = analysis.report
    e = parse_term("eps x. A(x) -> A(eps y. ~A(y))")
    assert report.cc == 1
    assert report.rank == 1
    assert report.degree == 2
    assert [info.term for info in analysis.at_rank(1)] == [e]
    assert report.widths[list(report.widths)[0]]["wd_eps"] == 1


def test_positional_measures_report_closures():
    proof = proof_of(
        "P(C, U) -> P(eps x. P(x, U), U) ; crit",
        "P(C, V) -> P(eps x. P(x, V), V) ; crit",
        "U = V -> (eps x. P(x, U)) = (eps x. P(x, V)) ; epseq[0]",
    )
    report = analyze(EC_EPS_EQ1, proof).report
    assert report.closures is not None
    assert list(report.closures.values()) == [2]


def test_quantifier_axioms_count_as_critical():
    report = analyze(PC_EQ, corpus_proof("pc-swap")).report
    assert report.cc == report.cc_quant
    assert report.cc > 0


def test_proof_file_round_trip():
    proof = corpus_proof("pc-swap")
    assert parse_proof(format_proof(proof, "comment")) == proof
    assert parse_justification("mp 1 2").minor == 0
    assert parse_justification("epseq[2]") == EpsEquality(2)
    assert parse_justification("eq[trans]") == EqAxiom("trans")
    assert parse_justification("crit[eps x. P(x), C]") == Critical(parse_term("eps x. P(x)"), const("C"))


@pytest.mark.parametrize(
    "text",
    [
        "1. A -> A ; taut\n3. A -> A ; taut\n",
        "1. A -> A\n",
        "1. A -> A ; bogus\n",
        "1. A -> A ; eq[bogus]\n",
        "1. A -> A ; taut\naxiom: A\n",
        "1. A -> A ; mp 1\n",
    ],
)
def test_malformed_proof_files(text):
    with pytest.raises(ParseError):
        parse_proof(text)


def test_builder_deduplicates_and_caps_lines():
    b = ProofBuilder()
    first = b.tautology(parse_formula("A -> A"))
    assert b.tautology(parse_formula("A -> A")) == first
    assert len(b) == 1
    with applied(EliminationConfig(limits=ResourceLimits(max_lines=2))):
        capped = ProofBuilder()
        capped.tautology(parse_formula("A -> A"))
        capped.tautology(parse_formula("B -> B"))
        with pytest.raises(ResourceLimitError):
            capped.tautology(parse_formula("C -> C"))


def test_builder_rejects_modus_ponens_mismatch():
    b = ProofBuilder()
    a = b.tautology(parse_formula("A -> A"))
    c = b.tautology(parse_formula("B -> B"))
    with pytest.raises(PreconditionError):
        b.mp(a, c)


def test_derive_and_eq_chain():
    c, d, e = const("C"), const("D"), const("E")
    b = ProofBuilder([Eq(c, d), Eq(e, d)])
    known = [b.axiom(Eq(c, d)), b.axiom(Eq(e, d))]
    chain = eq_chain(b, c, e, known)
    assert b.formula(chain) is Eq(c, e)
    assert eq_chain(b, c, const("F"), known) is None
    derive(b, parse_formula("C = E | A"), [chain])
    assert check_proof(EC_EQ, b.build(parse_formula("C = E | A"))).ok


def test_generalize_closed():
    b = ProofBuilder()
    line = b.add(parse_formula("a = a"), EqAxiom("refl"))
    general = generalize_closed(b, line, "a")
    assert b.formula(general) is parse_formula("forall x. x = x")
    assert check_proof(PC_EQ, b.build()).ok


def test_tautologies():
    assert is_tautology(parse_formula("A | ~A"))
    assert is_tautology(parse_formula("(A -> B) -> (B -> C) -> A -> C"))
    assert not is_tautology(parse_formula("A -> B"))
    assert is_tautology(parse_formula("P(eps x. P(x)) -> P(eps x. P(x))"))
    # quantified formulas are atoms
    assert not is_tautology(parse_formula("(forall x. P(x)) -> P(C)"))


def test_tautology_by_search():
    f = parse_formula("(A1 & A2 & A3 & A4) -> (A4 | B1 | B2)")
    assert is_tautology(f, TautologyConfig(max_table_atoms=2))
    g = parse_formula("(A1 | A2 | A3) -> (A3 & B1 & B2)")
    assert not is_tautology(g, TautologyConfig(max_table_atoms=2))


def test_tautology_verdicts_are_kept_per_config():
    f = parse_formula("(A5 -> B5) -> (B5 -> C5) -> A5 -> C5")
    assert is_tautology(f)
    with pytest.raises(ResourceLimitError):
        is_tautology(f, TautologyConfig(max_table_atoms=0, max_search_steps=1))


def test_deduction_transform_discharges_a_hypothesis():
    proof = proof_of("P(C) ; ax 1", "P(C) -> P(C) | Q(C) ; taut", "P(C) | Q(C) ; mp 1 2", axioms=["P(C)"])
    assert check_proof(EC, proof).ok
    discharged = deduction_transform(proof, parse_formula("P(C)"))
    assert discharged.axioms == ()
    assert discharged.conclusion is parse_formula("P(C) -> P(C) | Q(C)")
    assert check_proof(EC, discharged).ok


def test_deduction_transform_needs_a_closed_hypothesis():
    proof = proof_of("P(a) ; ax 1", "P(a) -> P(a) | Q(a) ; taut", "P(a) | Q(a) ; mp 1 2", axioms=["P(a)"])
    with pytest.raises(PreconditionError):
        deduction_transform(proof, parse_formula("P(a)"))
    opened = discharge(proof, parse_formula("P(a)"))
    assert opened.conclusion is parse_formula("P(a) -> P(a) | Q(a)")
    assert check_proof(EC, opened).ok


def test_regularize_renames_reused_eigenvariables():
    proof = proof_of(
        "(forall x. P(x)) -> P(a) ; allminus",
        "(forall x. P(x)) -> forall x. P(x) ; allplus 1 a",
        "(forall x. Q(x)) -> Q(a) ; allminus",
        "(forall x. Q(x)) -> forall x. Q(x) ; allplus 3 a",
    )
    assert check_proof(PC, proof).ok
    assert not is_regular(proof)
    regular = regularize(proof)
    assert is_regular(regular)
    assert regular.conclusion is proof.conclusion
    assert check_proof(PC, regular).ok


def test_slice_of_follows_references():
    proof = corpus_proof("drinker")
    assert slice_of(proof, 2) == [0, 1, 2]
    assert slice_of(proof, 1) == [1]


def test_combine_cases():
    case_a = proof_of("A -> B | ~B ; taut")
    case_b = proof_of("~A -> B | ~B ; taut")
    combined = combine_cases([case_a, case_b])
    assert combined.conclusion is parse_formula("B | ~B")
    assert check_proof(EC, combined).ok
    with pytest.raises(PreconditionError):
        combine_cases([case_a])


def test_system_lattice():
    assert system_by_name("EC-EPS-EQ") is EC_EPS_EQ
    with pytest.raises(ValueError):
        system_by_name("nope")
    assert EC_EPS_EQ.with_mode(EqualityMode.POSITIONAL) is EC_EPS_EQ1
    assert EC_EPS.with_mode(EqualityMode.MATRIX) is EC_EPS_EQ
    assert EC_EPS_EQ.elementary() is EC_EQ
    assert EC_EPS.elementary() is EC
    assert PC_EQ.quantifiers and not PC_EQ.epsilon


def test_tautology_recognition():
    assert recognize_tautology(parse_formula("A | ~A"))
    assert recognize_tautology(parse_formula("P(eps x. Q(x)) -> P(eps x. Q(x))"))
    assert not recognize_tautology(parse_formula("A -> B"))


def test_eps_equality_recognition_by_mode():
    matrix = parse_formula("U = V -> W = Z -> (eps x. R(x, U, W)) = (eps x. R(x, V, Z))")
    info = recognize_eps_equality(matrix, EqualityMode.MATRIX)
    assert info is not None
    assert info.premises == (Eq(const("U"), const("V")), Eq(const("W"), const("Z")))
    assert recognize_eps_equality(matrix, EqualityMode.POSITIONAL) is None

    single = parse_formula("W = Z -> (eps x. R(x, U, W)) = (eps x. R(x, U, Z))")
    info = recognize_eps_equality(single, EqualityMode.POSITIONAL)
    assert info is not None and info.position == 1
    assert recognize_eps_equality(single, EqualityMode.POSITIONAL, position=0) is None
    assert recognize_eps_equality(single, EqualityMode.NONE) is None


POSITIONAL = "1. U = V -> (eps x. P(x, U)) = (eps x. P(x, V)) ; epseq\n"


def test_closure_of_a_positional_proof():
    proof = parse_proof(POSITIONAL)
    g, _ = eps_matrix_of(parse_term("eps x. P(x, U)"))
    closure = closure_of(proof, g, EC_EPS_EQ1)
    assert closure.positions == {0: [const("U"), const("V")]}
    assert closure.size == 2
    assert set(closure.elements()) == {parse_term("eps x. P(x, U)"), parse_term("eps x. P(x, V)")}


def test_closure_of_needs_positional_equality_and_a_known_matrix():
    proof = parse_proof(POSITIONAL)
    g, _ = eps_matrix_of(parse_term("eps x. P(x, U)"))
    with pytest.raises(PreconditionError):
        closure_of(proof, g, EC_EPS_EQ)
    other, _ = eps_matrix_of(parse_term("eps x. Q(x, U)"))
    with pytest.raises(PreconditionError):
        closure_of(proof, other, EC_EPS_EQ1)


def test_critical_formula_recognition():
    term = parse_term("eps x. P(x)")
    found = recognize_critical(parse_formula("P(C) -> P(eps x. P(x))"))
    assert found == (term, const("C"))
    assert recognize_critical(parse_formula("P(C) -> Q(eps x. P(x))")) is None
