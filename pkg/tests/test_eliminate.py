from pathlib import Path

import pytest

from epsiverse.config import EliminationConfig
from epsiverse.eliminate import (
    BoundCheck,
    CongruenceClosureOracle,
    EliminationTrace,
    Eliminator,
    SymbolRegistry,
    closure_sizes,
    corpus,
    eliminate_eq_only_rank,
    extended_first_epsilon_theorem,
    first_epsilon_theorem,
    function_symbol_substitution,
)
from epsiverse.eliminate.identity import (
    build_identity_proof,
    build_identity_proof_positional,
    identity_chain_holds,
    subst_ca,
    subst_epseq,
)
from epsiverse.errors import BoundViolation, PreconditionError
from epsiverse.kernel import Eq, Imp, const, eps_matrix_of, eps_terms, fn, parse_formula, parse_term
from epsiverse.proofsys import (
    EC,
    EC_EPS,
    EC_EPS_EQ,
    EC_EPS_EQ1,
    EC_EPS_EQ_U,
    EC_EQ,
    PC_EQ,
    EqualityMode,
    analyze,
    check_proof,
    parse_proof,
    read_proof,
)
from epsiverse.translate import translate_proof

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
ORACLE = CongruenceClosureOracle()


def corpus_proof(name):
    return read_proof(CORPUS / f"{name}.eproof")


def assert_elementary(system, proof, conclusion):
    result = check_proof(system, proof)
    assert result.ok, result.diagnostics
    assert proof.conclusion is conclusion
    assert not any(f.has_eps for f in proof.formulas())


def test_single_critical_formula_is_eliminated():
    proof = corpus_proof("first-critical")
    eliminator = Eliminator()
    final = eliminator.first_epsilon_theorem(EC_EPS, proof)
    assert_elementary(EC, final, proof.conclusion)

    steps = eliminator.trace.steps
    assert len(steps) == 1
    assert steps[0].lemma == "critical"
    assert steps[0].rank == 1
    assert steps[0].after["order"] == steps[0].before["order"] - 1
    assert eliminator.trace.passed


def test_critical_and_equality_formulas_are_eliminated():
    proof = corpus_proof("first-epseq")
    eliminator = Eliminator()
    final = eliminator.first_epsilon_theorem(EC_EPS_EQ, proof)
    assert_elementary(EC_EQ, final, proof.conclusion)
    assert eliminator.trace.passed
    assert {s.lemma for s in eliminator.trace.steps} <= {"critical", "equality", "mixed", "rank"}


@pytest.mark.parametrize(
    "system, name",
    [
        (EC_EPS, "ip"),
        (PC_EQ, "pc-drinker"),
        (EC_EPS_EQ_U, "first-epseq"),
    ],
)
def test_first_theorem_preconditions(system, name):
    with pytest.raises(PreconditionError):
        first_epsilon_theorem(system, corpus_proof(name))


@pytest.mark.parametrize("name", ["ip", "drinker"])
def test_herbrand_disjunctions_of_translated_theorems(name):
    result = extended_first_epsilon_theorem(EC_EPS_EQ, corpus_proof(name))
    assert result.length >= 1
    assert check_proof(result.system, result.proof).ok
    assert result.proof.conclusion is result.disjunction
    assert ORACLE.decide(result.disjunction).valid
    assert result.trace.passed

    record = result.to_dict()
    assert record["length"] == result.length
    assert record["passed"] is True
    assert record["violations"] == 0


def test_herbrand_pipeline_from_a_quantifier_proof():
    source = corpus_proof("pc-drinker")
    source_cc = analyze(PC_EQ, source).report.cc
    result = extended_first_epsilon_theorem(EC_EPS_EQ, translate_proof(source), source_cc=source_cc)
    assert ORACLE.decide(result.disjunction).valid
    assert any(c.name == "length" for c in result.trace.summary)


def test_unsupported_mode_is_rejected():
    with pytest.raises(PreconditionError):
        extended_first_epsilon_theorem(EC_EPS_EQ, corpus_proof("ip"), mode="unrestricted")


@pytest.mark.parametrize("seed", [0, 101, 202])
def test_generated_herbrand_corpus_is_valid(seed):
    proofs = corpus(50, seed=seed, goal="herbrand")
    assert len(proofs) == 50
    for g in proofs:
        result = Eliminator(EliminationConfig(enforce_bounds=True)).extended_first_epsilon_theorem(g.system, g.proof)
        assert check_proof(result.system, result.proof).ok, g.seed
        verdict = ORACLE.decide(result.disjunction)
        assert verdict.valid, (g.seed, verdict.countermodel)
        assert verdict.metrics["seconds"] < 30
        assert result.trace.passed, [c for c in result.trace.violations]


@pytest.mark.parametrize("seed", [7, 101])
def test_generated_eps_free_corpus_has_elementary_proofs(seed):
    for g in corpus(20, seed=seed, goal="eps-free"):
        final = first_epsilon_theorem(g.system, g.proof)
        assert_elementary(g.system.elementary(), final, g.conclusion)


@pytest.mark.parametrize("seed", [3, 55, 101])
def test_positional_corpus_respects_closure_bounds(seed):
    proofs = corpus(20, seed=seed, goal="herbrand", mode=EqualityMode.POSITIONAL)
    assert all(g.system is EC_EPS_EQ1 for g in proofs)
    for g in proofs:
        result = Eliminator(EliminationConfig(enforce_bounds=True)).extended_first_epsilon_theorem(g.system, g.proof)
        assert ORACLE.decide(result.disjunction).valid, g.seed
        assert result.trace.passed, (g.seed, result.trace.violations)


def test_elimination_trace_round_trips_through_records():
    eliminator = Eliminator()
    eliminator.extended_first_epsilon_theorem(EC_EPS_EQ, corpus_proof("first-epseq"))
    trace = eliminator.trace
    again = EliminationTrace.from_records(trace.to_records())
    assert again == trace
    assert [s.lemma for s in eliminator.store.get_trace().steps] == [s.lemma for s in trace.steps]


def test_bound_violations_raise():
    trace = EliminationTrace()
    trace.raise_for_violations()
    trace.summary.append(BoundCheck.of("cc", "k", 1, 2))
    assert not trace.passed
    with pytest.raises(BoundViolation):
        trace.raise_for_violations()


def test_identity_proof_by_equality_axioms():
    proof = build_identity_proof(
        parse_formula("P(f(a, b))"), "a", const("C"), ["b"], [const("U")], [const("V")]
    )
    assert proof.conclusion is parse_formula("U = V -> P(f(C, U)) -> P(f(C, V))")
    assert check_proof(EC_EQ, proof).ok


def test_identity_proof_through_an_epsilon_term():
    proof = build_identity_proof(
        parse_formula("Q(eps x. R(x, a, b))"), "a", const("C"), ["b"], [const("U")], [const("V")]
    )
    assert proof.conclusion is parse_formula("U = V -> Q(eps x. R(x, C, U)) -> Q(eps x. R(x, C, V))")
    result = check_proof(EC_EPS_EQ, proof)
    assert result.ok, result.diagnostics
    assert result.report.cc_eq == 1
    assert not check_proof(EC_EQ, proof).ok


def test_positional_identity_proof():
    template = parse_formula("Q(eps x. R(x, a, b, c))")
    us = [const("U"), const("W")]
    proof = build_identity_proof_positional(template, "a", const("C"), ["b", "c"], us, 1, const("V"))
    assert proof.conclusion is parse_formula(
        "W = V -> Q(eps x. R(x, C, U, W)) -> Q(eps x. R(x, C, U, V))"
    )
    assert check_proof(EC_EPS_EQ1, proof).ok
    assert identity_chain_holds(EC_EPS_EQ1, proof)


@pytest.mark.parametrize("template", ["P(f(b))", "P(b, b)"])
def test_identity_templates_must_guard_their_names(template):
    with pytest.raises(PreconditionError):
        build_identity_proof(parse_formula(template), "a", const("C"), ["b"], [const("U")], [const("V")])


def test_critical_formulas_move_to_the_substituted_term():
    g, _ = eps_matrix_of(parse_term("eps x. P(x, U)"))
    proof = subst_ca(g, [const("U")], [const("V")], [const("C")])
    assert proof.conclusion is parse_formula("P(C, U) -> P(eps x. P(x, V), U)")
    result = check_proof(EC_EPS_EQ, proof)
    assert result.ok, result.diagnostics
    critical = {i.term for i in result.lines if i is not None and i.kind == "critical"}
    assert critical == {parse_term("eps x. P(x, V)")}


def test_equality_formulas_move_to_the_substituted_term():
    g, _ = eps_matrix_of(parse_term("eps x. P(x, U)"))
    proof = subst_epseq(g, [const("V")], [const("W")], [const("U")])
    assert proof.conclusion is parse_formula("W = U -> (eps x. P(x, V)) = (eps x. P(x, W))")
    result = check_proof(EC_EPS_EQ, proof)
    assert result.ok, result.diagnostics
    assert result.report.cc_eq == 1
    assert result.report.cc_eps == 0


EQ_ONLY = parse_proof(
    "1. U = V -> (eps x. R(x, eps y. Q(y, x), U)) = (eps x. R(x, eps y. Q(y, x), V)) ; epseq\n"
)


def test_equality_only_rank_becomes_function_symbols():
    analysis = analyze(EC_EPS_EQ, EQ_ONLY)
    assert analysis.report.rank == 2
    registry = SymbolRegistry()
    after, state = eliminate_eq_only_rank(analysis, None, registry)
    assert state is None
    assert len(registry) == 1
    symbol = next(iter(registry.symbols.values()))
    assert after.proof.conclusion is Imp(Eq(const("U"), const("V")), Eq(fn(symbol, const("U")), fn(symbol, const("V"))))
    assert after.report.rank == 0
    assert check_proof(EC_EQ, after.proof).ok


def test_function_symbol_substitution_needs_an_equality_only_matrix():
    analysis = analyze(EC_EPS, corpus_proof("first-critical"))
    e = next(eps_terms(corpus_proof("first-critical").lines[0].formula))
    g, _ = eps_matrix_of(e)
    with pytest.raises(PreconditionError):
        function_symbol_substitution(analysis, g, SymbolRegistry())


def test_closure_width_counts_every_instance_of_the_matrix():
    proof = parse_proof(
        "1. U = V -> (eps x. P(x, U)) = (eps x. P(x, V)) ; epseq\n"
        "2. W = Z -> (eps x. P(x, W)) = (eps x. P(x, Z)) ; epseq\n"
    )
    analysis = analyze(EC_EPS_EQ1, proof)
    assert max(i.width_equality for i in analysis.terms.values()) == 1
    (check,) = closure_sizes(analysis, 1)
    assert check.actual == 4
    assert check.bound == "16"
    assert check.passed


SINGLE_PARTNER = parse_proof(
    "1. U = V -> (eps x. P(x, U)) = (eps x. P(x, V)) ; epseq\n"
    "2. (U = V -> (eps x. P(x, U)) = (eps x. P(x, V))) -> A | ~A ; taut\n"
    "3. A | ~A ; mp 1 2\n"
)


def test_partner_with_a_single_equality_leaves_with_the_eliminated_term():
    eliminator = Eliminator()
    final = eliminator.first_epsilon_theorem(EC_EPS_EQ, SINGLE_PARTNER)
    assert_elementary(EC_EQ, final, SINGLE_PARTNER.conclusion)
    assert eliminator.trace.passed, eliminator.trace.violations
    (step,) = eliminator.trace.steps
    assert step.lemma == "equality"
    assert (step.before["order"], step.after["order"]) == (2, 0)
    assert {c.name for c in step.checks} >= {"order", "terms"}
