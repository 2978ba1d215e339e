"""Text syntax for terms and formulas.

Binders (``eps``, ``forall``, ``exists``) extend as far right as possible. A
quantified formula may stand as a whole formula or as the consequent of ``->``;
anywhere else it must be parenthesized. An ε-term may stand bare as an argument
of a function or predicate and must be parenthesized elsewhere.

In term position a bare lowercase identifier is a variable and a bare identifier
starting with an uppercase letter or a digit is a constant. ``+`` (right
associative) and ``@`` (left associative application) are binary function
symbols.
"""

import threading
from typing import Any, Dict, List, Optional, Tuple

import lark as L

from ..errors import ArityError, ParseError
from .ops import abstract
from .syntax import And, Eps, Eq, Exists, Forall, Formula, Fn, Imp, Node, Not, Or, Pred, Term, Var

GRAMMAR = r"""
?formula: binder
        | implication
binder: QUANTIFIER NAME "." formula
?implication: disjunction
            | disjunction IMPLIES formula -> implication
?disjunction: conjunction
            | conjunction OR disjunction -> disjunction
?conjunction: unary
            | unary AND conjunction -> conjunction
?unary: NOT unary -> negation
      | atom
      | "(" formula ")"
?atom: NAME "(" [arg ("," arg)*] ")" -> predicate
     | NAME -> proposition
     | term "=" term -> equation

?arg: term
    | epsterm
epsterm: EPS NAME "." formula

?term: app
     | app "+" term -> plus
?app: primary
    | app "@" primary -> compose
?primary: NAME "(" [arg ("," arg)*] ")" -> application
        | NAME -> name
        | "(" term ")"
        | "(" epsterm ")"

?term_start: term
           | epsterm

QUANTIFIER: "forall" | "exists" | "∀" | "∃"
EPS: "eps" | "ε"
NOT: "~" | "¬"
AND: "&" | "∧"
OR: "|" | "∨"
IMPLIES: "->" | "→"
NAME: /[A-Za-z0-9_][A-Za-z0-9_']*/

%import common.WS
%ignore WS
"""

KEYWORDS = frozenset({"eps", "forall", "exists"})

_parser: Optional[L.Lark] = None
_parser_lock = threading.Lock()


def _get_parser() -> L.Lark:
    global _parser
    with _parser_lock:
        if _parser is None:
            _parser = L.Lark(GRAMMAR, start=["formula", "term_start"], parser="earley")
        return _parser


def is_variable_name(name: str) -> bool:
    return bool(name) and (name[0].islower() or name[0] == "_")


def _check_binder_name(name: str) -> str:
    if name in KEYWORDS or not is_variable_name(name):
        raise ParseError(f"Invalid bound variable name '{name}'")
    return name


class SyntaxBuilder(L.Transformer[Any, Node]):
    def binder(self, items: List[Any]) -> Formula:
        quantifier, name, body = str(items[0]), _check_binder_name(str(items[1])), items[2]
        if quantifier in ("forall", "∀"):
            return Forall(abstract(body, name), name)
        return Exists(abstract(body, name), name)

    def epsterm(self, items: List[Any]) -> Term:
        name = _check_binder_name(str(items[1]))
        return Eps(abstract(items[2], name), name)

    def implication(self, items: List[Any]) -> Formula:
        return Imp(items[0], items[2])

    def disjunction(self, items: List[Any]) -> Formula:
        return Or(items[0], items[2])

    def conjunction(self, items: List[Any]) -> Formula:
        return And(items[0], items[2])

    def negation(self, items: List[Any]) -> Formula:
        return Not(items[1])

    def predicate(self, items: List[Any]) -> Formula:
        return Pred(str(items[0]), _args(items[1:]))

    def proposition(self, items: List[Any]) -> Formula:
        return Pred(str(items[0]), ())

    def equation(self, items: List[Any]) -> Formula:
        return Eq(items[0], items[1])

    def plus(self, items: List[Any]) -> Term:
        return Fn("+", (items[0], items[1]))

    def compose(self, items: List[Any]) -> Term:
        return Fn("@", (items[0], items[1]))

    def application(self, items: List[Any]) -> Term:
        return Fn(str(items[0]), _args(items[1:]))

    def name(self, items: List[Any]) -> Term:
        text = str(items[0])
        if text in KEYWORDS:
            raise ParseError(f"Keyword '{text}' used as a name")
        if is_variable_name(text):
            return Var(text)
        return Fn(text, ())


def _args(items: List[Any]) -> Tuple[Term, ...]:
    return tuple(a for a in items if a is not None)


def _parse(text: str, start: str) -> Node:
    try:
        tree = _get_parser().parse(text, start=start)
        node = SyntaxBuilder().transform(tree)
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, ParseError):
            raise e.orig_exc
        raise ParseError(f"Cannot build syntax from '{text}': {e.orig_exc}")
    except L.exceptions.UnexpectedInput as e:
        raise ParseError(f"Cannot parse '{text.strip()}'", getattr(e, "line", None), getattr(e, "column", None))
    check_arities([node])
    return node


def parse_formula(text: str) -> Formula:
    node = _parse(text, "formula")
    assert isinstance(node, Formula)
    return node


def parse_term(text: str) -> Term:
    node = _parse(text, "term_start")
    if not isinstance(node, Term):
        raise ParseError(f"Expected a term, got '{text}'")
    return node


def signature(nodes: List[Node]) -> Dict[Tuple[str, str], int]:
    """Arity of every function ('f') and predicate ('p') symbol, checked for consistency."""
    sig: Dict[Tuple[str, str], int] = {}
    for root in nodes:
        for n in root.subnodes():
            if isinstance(n, Fn):
                k = ("f", n.symbol)
            elif isinstance(n, Pred):
                k = ("p", n.symbol)
            else:
                continue
            arity = len(n.args)
            known = sig.setdefault(k, arity)
            if known != arity:
                kind = "function" if k[0] == "f" else "predicate"
                raise ArityError(f"{kind} symbol '{n.symbol}' used with arities {known} and {arity}")
    return sig


def check_arities(nodes: List[Node]) -> None:
    signature(nodes)
