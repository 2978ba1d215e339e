import pytest

from epsiverse.eliminate import CongruenceClosureOracle
from epsiverse.eliminate.oracle import CongruenceClosure, UnionFind, consistent
from epsiverse.errors import PreconditionError, ResourceLimitError
from epsiverse.kernel import parse_formula, parse_term

ORACLE = CongruenceClosureOracle()


@pytest.mark.parametrize(
    "text",
    [
        "a = b -> f(a) = f(b)",
        "a = b & b = c -> a = c",
        "a = b -> P(a) -> P(b)",
        "P(a) | ~P(a)",
        "f(f(a)) = a & f(f(f(a))) = a -> f(a) = a",
        "(A -> B) -> ~B -> ~A",
    ],
)
def test_valid_formulas(text):
    result = ORACLE.decide(parse_formula(text))
    assert result.valid
    assert result.countermodel is None


def test_invalid_formula_has_a_countermodel():
    result = ORACLE.decide(parse_formula("P(a) -> P(b)"))
    assert not result.valid
    assert result.countermodel == {"P(a)": True, "P(b)": False}
    assert result.metrics["atoms"] == 2
    assert result.metrics["nodes"] >= 1


def test_equality_is_not_assumed():
    assert not ORACLE.decide(parse_formula("f(a) = f(b) -> a = b")).valid


def test_epsilon_and_quantifiers_are_rejected():
    with pytest.raises(PreconditionError):
        ORACLE.decide(parse_formula("P(eps x. P(x))"))
    with pytest.raises(PreconditionError):
        ORACLE.decide(parse_formula("forall x. P(x)"))


def test_search_is_bounded():
    with pytest.raises(ResourceLimitError):
        CongruenceClosureOracle(max_nodes=1).decide(parse_formula("P(a) -> P(b)"))


def test_consistency_under_congruence():
    a_eq_b = parse_formula("a = b")
    fa_eq_fb = parse_formula("f(a) = f(b)")
    assert not consistent({a_eq_b: True, fa_eq_fb: False})
    assert consistent({a_eq_b: False, fa_eq_fb: True})
    assert not consistent({a_eq_b: True, parse_formula("P(a)"): True, parse_formula("P(b)"): False})


def test_congruence_closure():
    cc = CongruenceClosure()
    a, b = parse_term("a"), parse_term("b")
    ga, gb = parse_term("g(f(a), a)"), parse_term("g(f(b), b)")
    cc.add_term(ga)
    cc.add_term(gb)
    cc.merge(a, b)
    cc.close()
    assert cc.equal(ga, gb)
    assert not cc.equal(a, ga)


def test_union_find():
    uf = UnionFind()
    a, b, c = parse_term("a"), parse_term("b"), parse_term("c")
    assert uf.union(a, b)
    assert not uf.union(b, a)
    assert uf.find(a) is uf.find(b)
    assert uf.find(c) is c
