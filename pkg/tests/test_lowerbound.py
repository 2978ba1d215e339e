import pytest

from epsiverse.errors import PreconditionError
from epsiverse.kernel import Eq, Imp, Var, const, parse_term
from epsiverse.lowerbound import (
    COMBINATOR_AXIOMS,
    NormalizationLimit,
    PReduction,
    app,
    bench_statman,
    bench_yukami,
    build_family,
    comb_normalize,
    gen_eq_t_proof,
    gen_linear_proof,
    gen_unrestricted_identity_proof,
    gen_yukami_proof,
    is_normal,
    q_exponent,
    q_power,
    separating_exponent,
    statman_conclusion,
    t_n,
    tower,
    yukami_axioms,
    yukami_contexts,
    zero_power,
)
from epsiverse.lowerbound.combinators import ONE, P, Q, S, T, ZERO, I
from epsiverse.proofsys import EC_EPS_EQ, EC_EPS_EQ_U, PC_EQ, analyze, check_proof


@pytest.mark.parametrize("n, exponent", [(1, 3), (2, 5), (3, 17)])
def test_normal_form_of_t_n_q_q(n, exponent):
    normal = comb_normalize(app(t_n(n), Q, Q))
    assert normal.complete
    assert q_exponent(normal.term) == exponent
    assert build_family(n, prove=False).normal_form_length == exponent


def test_powers_of_q():
    assert q_exponent(q_power(4)) == 4
    assert q_exponent(app(Q, Q, Q)) is None
    assert tower(0) == 1
    assert tower(4) == 65536


def test_nonterminating_terms_hit_the_step_limit():
    omega = app(S, I, I, app(S, I, I))
    with pytest.raises(NormalizationLimit) as info:
        comb_normalize(omega, max_steps=10)
    assert not info.value.partial.complete
    assert not comb_normalize(omega, max_steps=10, strict=False).complete


def test_unknown_strategy_is_rejected():
    with pytest.raises(PreconditionError):
        comb_normalize(Q, strategy="rightmost")


def test_p_reduction_compares_against_the_exponent():
    rules = PReduction(3)
    assert comb_normalize(app(P, Q), rules=rules).term is ZERO
    assert comb_normalize(app(P, q_power(3)), rules=rules).term is ONE
    assert comb_normalize(app(P, app(T, Q, Q)), rules=rules).term is ONE
    assert is_normal(app(P, Var("x")))
    with pytest.raises(PreconditionError):
        PReduction(1)


def test_separating_exponent():
    assert separating_exponent(1, []) == 2
    assert separating_exponent(1, [Q]) == 3


def test_eq_t_takes_twelve_instances():
    proof = gen_eq_t_proof()
    result = check_proof(PC_EQ, proof)
    assert result.ok, result.diagnostics
    assert result.report.cc == 12
    t, u = Var("t"), Var("u")
    assert proof.conclusion is Imp(COMBINATOR_AXIOMS, Eq(app(T, t, u), app(t, app(t, u))))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_linear_proofs_check(n):
    proof = gen_linear_proof(n)
    result = check_proof(PC_EQ, proof)
    assert result.ok, result.diagnostics
    assert proof.conclusion is statman_conclusion(n)


def test_statman_critical_count_grows_linearly():
    rows = bench_statman([2, 3, 4, 5])
    counts = [cc for _, cc, _ in rows]
    steps = {b - a for a, b in zip(counts, counts[1:])}
    assert len(steps) == 1
    assert steps.pop() > 0


def test_zero_powers_nest_to_the_right():
    assert zero_power(0) is ZERO
    assert zero_power(2) is parse_term("0 + 0 + 0")


@pytest.mark.parametrize("k", [1, 2, 5])
def test_yukami_contexts_meet(k):
    r1, r2 = yukami_contexts(k)
    assert "_r" in r1.free_vars and "_r" in r2.free_vars
    assert len(yukami_axioms(k)) == 5


def test_yukami_proofs_check():
    proof = gen_yukami_proof(3)
    result = check_proof(PC_EQ, proof)
    assert result.ok, result.diagnostics
    assert proof.conclusion is Eq(zero_power(3), ZERO)


def test_yukami_critical_count_is_constant():
    rows = bench_yukami([1, 5, 10, 25, 50])
    assert {cc for _, cc, _ in rows} == {5}


def test_unrestricted_identity_proof():
    context = parse_term("f(g(a))")
    proof = gen_unrestricted_identity_proof(context, const("C"), const("D"))
    assert proof.conclusion is Imp(Eq(const("C"), const("D")), Eq(parse_term("f(g(C))"), parse_term("f(g(D))")))
    result = check_proof(EC_EPS_EQ_U, proof)
    assert result.ok, result.diagnostics
    assert analyze(EC_EPS_EQ_U, proof).report.cc == 3
    assert not check_proof(EC_EPS_EQ, proof).ok


def test_unrestricted_identity_needs_unrestricted_equality():
    with pytest.raises(PreconditionError):
        gen_unrestricted_identity_proof(parse_term("f(a)"), const("C"), const("D"), system=EC_EPS_EQ)
