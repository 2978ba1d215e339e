from .matrix import EpsMatrix, arguments_of, eps_matrix_of, is_matrix, matrix_of
from .measures import degree, max_rank, property_degree, rank, subordinating
from .ops import (
    VACUOUS,
    FreshNames,
    abstract,
    bind_eps,
    bind_exists,
    bind_forall,
    conjunction,
    conjuncts,
    disjunction,
    disjuncts,
    eps_terms,
    fresh_names,
    fresh_var,
    implies,
    instantiate,
    match,
    match_instance,
    maximal_eps_terms,
    occurs,
    open_binder,
    replace,
    substitute,
)
from .parser import check_arities, parse_formula, parse_term, signature
from .printer import format_formula, format_node, format_term
from .syntax import (
    And,
    BVar,
    Eps,
    Eq,
    Exists,
    Forall,
    Fn,
    Formula,
    Imp,
    Node,
    Not,
    Or,
    Pred,
    Quantifier,
    Term,
    Var,
    const,
    fn,
    pred,
)
from .translation import eps_translate


def free_vars(node: Node) -> "frozenset[str]":
    return node.free_vars


def alpha_eq(a: Node, b: Node) -> bool:
    """α-equivalence; nodes are interned, so this is identity."""
    return a is b


__all__ = [
    "And",
    "BVar",
    "Eps",
    "EpsMatrix",
    "Eq",
    "Exists",
    "Forall",
    "Fn",
    "Formula",
    "FreshNames",
    "Imp",
    "Node",
    "Not",
    "Or",
    "Pred",
    "Quantifier",
    "Term",
    "VACUOUS",
    "Var",
    "abstract",
    "alpha_eq",
    "arguments_of",
    "bind_eps",
    "bind_exists",
    "bind_forall",
    "check_arities",
    "conjunction",
    "conjuncts",
    "const",
    "degree",
    "disjunction",
    "disjuncts",
    "eps_matrix_of",
    "eps_terms",
    "eps_translate",
    "fn",
    "format_formula",
    "format_node",
    "format_term",
    "free_vars",
    "fresh_names",
    "fresh_var",
    "implies",
    "instantiate",
    "is_matrix",
    "match",
    "match_instance",
    "matrix_of",
    "max_rank",
    "maximal_eps_terms",
    "occurs",
    "open_binder",
    "parse_formula",
    "parse_term",
    "pred",
    "property_degree",
    "rank",
    "replace",
    "signature",
    "subordinating",
    "substitute",
]
