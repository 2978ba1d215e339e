from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..kernel import (
    VACUOUS,
    And,
    Eps,
    Eq,
    Exists,
    Fn,
    Forall,
    Formula,
    Imp,
    Node,
    Pred,
    Quantifier,
    Term,
    eps_matrix_of,
    eps_terms,
    instantiate,
    match_instance,
)
from ..kernel.syntax import BVar
from .system import EqualityMode

EQ_KINDS = ("refl", "sym", "trans", "pred", "fn")


@dataclass(frozen=True)
class EpsEqualityInfo:
    """An ε-equality ``premises -> left = right``."""

    left: Eps
    right: Eps
    premises: Tuple[Eq, ...]
    position: Optional[int] = None


def is_critical(formula: Formula, term: Eps, witness: Term) -> bool:
    if not term.closed or not witness.closed:
        return False
    return formula is Imp(instantiate(term.body, witness), instantiate(term.body, term))


def recognize_critical(formula: Formula) -> Optional[Tuple[Eps, Term]]:
    """Find ``e`` and ``t`` with ``formula = A(t) -> A(e)`` and ``e = ε_x A(x)``."""
    if not isinstance(formula, Imp):
        return None
    for e in eps_terms(formula.right):
        if instantiate(e.body, e) is not formula.right:
            continue
        witness = match_instance(e.body, formula.left)
        if witness is VACUOUS:
            return e, e
        if isinstance(witness, Term):
            return e, witness
    return None


def split_premises(formula: Formula, count: int) -> Optional[Tuple[List[Formula], Formula]]:
    """Read ``P1 & ... & Pn -> C`` or ``P1 -> ... -> Pn -> C`` with exactly ``count`` premises."""
    if not isinstance(formula, Imp) or count < 1:
        return None
    conj: List[Formula] = []
    f: Formula = formula.left
    while isinstance(f, And) and len(conj) < count - 1:
        conj.append(f.left)
        f = f.right
    conj.append(f)
    if len(conj) == count:
        return conj, formula.right
    curried: List[Formula] = []
    g: Formula = formula
    for _ in range(count):
        if not isinstance(g, Imp):
            return None
        curried.append(g.left)
        g = g.right
    return curried, g


def _pairs_match(premises: List[Formula], left: Tuple[Term, ...], right: Tuple[Term, ...]) -> bool:
    return all(p is Eq(a, b) for p, a, b in zip(premises, left, right))


def _congruence(formula: Formula, kind: str) -> bool:
    # the conclusion fixes the arity; try both premise shapes against it
    tail = formula
    while isinstance(tail, Imp):
        if kind == "pred" and isinstance(tail.left, Pred) and isinstance(tail.right, Pred):
            break
        tail = tail.right
    if kind == "pred":
        if not isinstance(tail, Imp):
            return False
        lhs, rhs = tail.left, tail.right
        if not (isinstance(lhs, Pred) and isinstance(rhs, Pred) and lhs.symbol == rhs.symbol):
            return False
    else:
        if not (isinstance(tail, Eq) and isinstance(tail.left, Fn) and isinstance(tail.right, Fn)):
            return False
        lhs, rhs = tail.left, tail.right
        if lhs.symbol != rhs.symbol:
            return False
    arity = len(lhs.args)
    if arity == 0 or len(rhs.args) != arity:
        return False
    split = split_premises(formula, arity)
    if split is None:
        return False
    premises, conclusion = split
    if conclusion is not tail:
        return False
    return _pairs_match(premises, lhs.args, rhs.args)


def eq_axiom_kind(formula: Formula, kind: Optional[str] = None) -> Optional[str]:
    kinds = EQ_KINDS if kind is None else (kind,)
    for k in kinds:
        if _is_eq_axiom(formula, k):
            return k
    return None


def _is_eq_axiom(formula: Formula, kind: str) -> bool:
    match kind, formula:
        case "refl", Eq(left, right):
            return left is right
        case "sym", Imp(Eq(s, t), Eq(t2, s2)):
            return s is s2 and t is t2
        case "trans", Imp(Eq(s, t), Imp(Eq(t2, u), Eq(s2, u2))):
            return t is t2 and s is s2 and u is u2
        case "pred" | "fn", Imp():
            return _congruence(formula, kind)
        case _:
            return False


def is_forall_minus(formula: Formula) -> bool:
    match formula:
        case Imp(Forall(body), instance):
            return match_instance(body, instance) is not None
        case _:
            return False


def is_exists_plus(formula: Formula) -> bool:
    match formula:
        case Imp(instance, Exists(body)):
            return match_instance(body, instance) is not None
        case _:
            return False


def recognize_eps_equality(
    formula: Formula, mode: EqualityMode, position: Optional[int] = None
) -> Optional[EpsEqualityInfo]:
    if mode is EqualityMode.MATRIX:
        return _matrix_eps_equality(formula)
    if mode is EqualityMode.POSITIONAL:
        return _positional_eps_equality(formula, position)
    if mode is EqualityMode.UNRESTRICTED:
        return _unrestricted_eps_equality(formula)
    return None


def _conclusion_sides(formula: Formula) -> Optional[Tuple[Eps, Eps]]:
    tail = formula
    while isinstance(tail, Imp):
        tail = tail.right
    if isinstance(tail, Eq) and isinstance(tail.left, Eps) and isinstance(tail.right, Eps):
        if tail.left.closed and tail.right.closed:
            return tail.left, tail.right
    return None


def _matrix_eps_equality(formula: Formula) -> Optional[EpsEqualityInfo]:
    sides = _conclusion_sides(formula)
    if sides is None:
        return None
    left, right = sides
    m1, us = eps_matrix_of(left)
    m2, vs = eps_matrix_of(right)
    if m1 != m2 or m1.arity == 0:
        return None
    split = split_premises(formula, m1.arity)
    if split is None or split[1] is not Eq(left, right):
        return None
    if not _pairs_match(split[0], us, vs):
        return None
    return EpsEqualityInfo(left, right, tuple(Eq(u, v) for u, v in zip(us, vs)))


def _positional_eps_equality(formula: Formula, position: Optional[int]) -> Optional[EpsEqualityInfo]:
    match formula:
        case Imp(Eq(a, b) as premise, Eq(Eps() as left, Eps() as right)):
            pass
        case _:
            return None
    if not (left.closed and right.closed):
        return None
    m1, us = eps_matrix_of(left)
    m2, vs = eps_matrix_of(right)
    if m1 != m2 or m1.arity == 0:
        return None
    changed = [i for i in range(m1.arity) if us[i] is not vs[i]]
    if len(changed) > 1:
        return None
    if position is not None:
        candidates = [position] if 0 <= position < m1.arity else []
    elif changed:
        candidates = changed
    else:
        candidates = list(range(m1.arity))
    for i in candidates:
        if changed and changed != [i]:
            continue
        if us[i] is a and vs[i] is b:
            return EpsEqualityInfo(left, right, (premise,), i)
    return None


def _unrestricted_eps_equality(formula: Formula) -> Optional[EpsEqualityInfo]:
    sides = _conclusion_sides(formula)
    if sides is None or not isinstance(formula, Imp):
        return None
    left, right = sides
    premises: List[Eq] = []
    f: Formula = formula
    while isinstance(f, Imp) and f is not Eq(left, right):
        g: Formula = f.left
        while isinstance(g, And):
            if not isinstance(g.left, Eq):
                return None
            premises.append(g.left)
            g = g.right
        if not isinstance(g, Eq):
            return None
        premises.append(g)
        f = f.right
    if f is not Eq(left, right) or not premises:
        return None
    allowed = {(p.left, p.right) for p in premises}

    def walk(a: Node, b: Node) -> bool:
        if a is b:
            return True
        if isinstance(a, Term) and isinstance(b, Term) and a.closed and b.closed and (a, b) in allowed:
            return True
        if type(a) is not type(b) or isinstance(a, BVar):
            return False
        if getattr(a, "symbol", None) != getattr(b, "symbol", None):
            return False
        ka, kb = a.children(), b.children()
        return len(ka) == len(kb) and all(walk(x, y) for x, y in zip(ka, kb))

    if not walk(left, right):
        return None
    return EpsEqualityInfo(left, right, tuple(premises))


def is_binder(node: Node) -> bool:
    return isinstance(node, (Eps, Quantifier))
