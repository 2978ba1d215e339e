import pytest

from epsiverse.errors import ArityError, ParseError, PreconditionError, SubstitutionError
from epsiverse.kernel import (
    VACUOUS,
    BVar,
    Eps,
    Eq,
    Forall,
    Fn,
    Imp,
    Pred,
    Var,
    bind_eps,
    bind_forall,
    conjunction,
    conjuncts,
    const,
    degree,
    disjunction,
    eps_matrix_of,
    eps_translate,
    fn,
    format_formula,
    format_term,
    fresh_names,
    instantiate,
    is_matrix,
    match,
    match_instance,
    maximal_eps_terms,
    occurs,
    parse_formula,
    parse_term,
    pred,
    property_degree,
    rank,
    replace,
    substitute,
)


@pytest.mark.parametrize(
    "text",
    [
        "P(a) -> exists x. P(x)",
        "(forall x. P(x)) -> P(C)",
        "P(eps x. Q(x))",
        "(eps x. P(x)) = C",
        "A & B | ~C -> D",
        "~(forall x. P(x))",
        "0 + 0 + 0 = 0",
        "S @ B @ C = S @ (B @ C)",
        "P(p())",
        "forall x. forall y. x = y -> y = x",
    ],
)
def test_print_parse_round_trip(text):
    formula = parse_formula(text)
    assert format_formula(formula) == text
    assert parse_formula(format_formula(formula)) is formula


def test_binders_extend_right():
    f = parse_formula("forall x. P(x) -> Q(x)")
    assert isinstance(f, Forall)
    assert isinstance(f.body, Imp)


def test_case_decides_variables_and_constants():
    t = parse_term("f(x, C, 0)")
    assert isinstance(t, Fn)
    assert t.args == (Var("x"), const("C"), const("0"))
    assert parse_term("p()") is fn("p")
    assert format_term(fn("p")) == "p()"


def test_alpha_equal_formulas_are_identical():
    assert parse_term("eps x. P(x)") is parse_term("eps y. P(y)")
    assert parse_formula("forall x. R(x, a)") is parse_formula("forall z. R(z, a)")
    assert parse_formula("forall x. R(x, a)") is not parse_formula("forall x. R(a, x)")


@pytest.mark.parametrize(
    "text, error",
    [
        ("P(", ParseError),
        ("forall X. P(X)", ParseError),
        ("forall eps. P(eps)", ParseError),
        ("P(a) & P(a, b)", ArityError),
        ("f(a) = f(a, b)", ArityError),
    ],
)
def test_malformed_input_is_rejected(text, error):
    with pytest.raises(error):
        parse_formula(text)


def test_printer_renames_bound_variables_away_from_free_ones():
    f = substitute(parse_formula("forall x. R(x, y)"), {"y": Var("x")})
    assert f.free_vars == {"x"}
    assert format_formula(f) == "forall x1. R(x1, x)"


def test_instantiate_requires_a_closed_term():
    body = parse_term("eps x. P(x)").body
    assert instantiate(body, const("C")) is parse_formula("P(C)")
    with pytest.raises(SubstitutionError):
        instantiate(body, BVar(0))


def test_substitute_leaves_bound_occurrences_alone():
    f = parse_formula("P(x) & forall x. Q(x)")
    assert substitute(f, {"x": const("C")}) is parse_formula("P(C) & forall x. Q(x)")


def test_replace_is_outermost_first():
    inner = parse_term("eps y. Q(y)")
    outer = parse_term("eps x. P(x, eps y. Q(y))")
    f = parse_formula("R(eps x. P(x, eps y. Q(y)), eps y. Q(y))")
    out = replace(f, {outer: const("C"), inner: const("D")})
    assert out is parse_formula("R(C, D)")


def test_match_and_match_instance():
    binding = match(parse_formula("P(a, b)"), parse_formula("P(C, f(C))"), ["a", "b"])
    assert binding == {"a": const("C"), "b": fn("f", const("C"))}
    assert match(parse_formula("P(a, a)"), parse_formula("P(C, D)"), ["a"]) is None

    e = parse_term("eps x. R(x, C)")
    assert match_instance(e.body, parse_formula("R(D, C)")) is const("D")
    assert match_instance(parse_term("eps x. Q").body, parse_formula("Q")) is VACUOUS
    assert match_instance(e.body, parse_formula("R(D, D)")) is None


def test_maximal_eps_terms_skip_nested_closed_terms():
    f = parse_formula("P(eps x. Q(x, eps y. R(y))) & R(eps y. R(y))")
    outer = parse_term("eps x. Q(x, eps y. R(y))")
    inner = parse_term("eps y. R(y)")
    assert maximal_eps_terms(f) == [outer, inner]
    assert occurs(inner, outer)


@pytest.mark.parametrize(
    "text, expected_rank, expected_degree",
    [
        ("eps x. P(x)", 1, 1),
        ("eps y. B(y, eps x. A(x, y))", 2, 2),
        ("eps y. B(y, eps x. A(x, C))", 1, 2),
        ("eps x. P(f(x, eps y. Q(y)))", 1, 2),
        ("eps x. P(eps y. Q(y, eps z. R(z, x, y)))", 3, 3),
    ],
)
def test_rank_and_degree(text, expected_rank, expected_degree):
    e = parse_term(text)
    assert rank(e) == expected_rank
    assert degree(e) == expected_degree


def test_property_degree():
    assert property_degree(parse_term("eps x. P(x)")) == 0
    assert property_degree(parse_term("eps y. B(y, eps x. A(x, y))")) == 1
    with pytest.raises(PreconditionError):
        property_degree(const("C"))


def test_matrix_abstracts_each_closed_occurrence():
    e = parse_term("eps x. R(x, f(C), f(C))")
    g, args = eps_matrix_of(e)
    assert g.parameters == ("_a0", "_a1")
    assert args == (fn("f", const("C")), fn("f", const("C")))
    assert is_matrix(g.term)
    assert not is_matrix(e)
    assert g.instantiate(args) is e

    same, other = eps_matrix_of(parse_term("eps x. R(x, D, a)"))
    assert same == g
    assert other == (const("D"), Var("a"))


def test_matrix_keeps_subterms_that_mention_the_bound_variable():
    g, args = eps_matrix_of(parse_term("eps x. P(f(x, C))"))
    assert args == (const("C"),)
    assert g.term is bind_eps("x", pred("P", fn("f", Var("x"), Var("_a0"))))


def test_matrix_of_an_open_semiterm_is_rejected():
    with pytest.raises(PreconditionError):
        eps_matrix_of(Eps(Pred("P", (BVar(1),))))


def test_eps_translation():
    assert eps_translate(parse_formula("exists x. P(x)")) is parse_formula("P(eps x. P(x))")
    assert eps_translate(parse_formula("forall x. P(x)")) is parse_formula("P(eps x. ~P(x))")
    drinker = eps_translate(parse_formula("exists x. A(x) -> forall y. A(y)"))
    assert drinker is parse_formula("A(eps x. A(x) -> A(eps y. ~A(y))) -> A(eps y. ~A(y))")


def test_connective_helpers():
    a, b, c = parse_formula("A"), parse_formula("B"), parse_formula("C")
    assert conjunction([]) is None
    assert conjunction([a, b, c]) is parse_formula("A & B & C")
    assert disjunction([a, b]) is parse_formula("A | B")
    assert conjuncts(parse_formula("A & B & C")) == [a, b, c]


def test_fresh_names_avoid_given_names():
    fresh_names.reset()
    first = fresh_names.fresh("_e", avoid={"_e0"})
    assert first != "_e0"
    assert fresh_names.fresh("_e") != first


def test_bound_structure_is_nameless():
    f = bind_forall("x", Eq(Var("x"), Var("y")))
    assert f.body is Eq(BVar(0), Var("y"))
    assert f.free_vars == {"y"}
