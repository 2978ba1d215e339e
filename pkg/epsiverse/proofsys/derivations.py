"""Derived rules on top of :class:`ProofBuilder`.

Each helper returns the index of the line proving its result. Equational facts
come from the EQ schemata; everything else is one tautology plus modus ponens.
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import PreconditionError
from ..kernel import (
    Eq,
    Exists,
    Fn,
    Forall,
    Formula,
    Imp,
    Pred,
    Term,
    Var,
    abstract,
    conjunction,
    fresh_var,
    implies,
    instantiate,
)
from .proof import EqAxiom, ExistsMinus, ExistsPlus, ForallMinus, ForallPlus, ProofBuilder


def derive(b: ProofBuilder, goal: Formula, premises: Sequence[int] = ()) -> int:
    """Prove ``goal`` by the tautology ``P1 -> ... -> Pn -> goal`` and modus ponens."""
    known = b.find(goal)
    if known is not None:
        return known
    taut = b.tautology(implies([b.formula(i) for i in premises], goal))
    return b.mp_chain(premises, taut)


def refl(b: ProofBuilder, t: Term) -> int:
    return b.add(Eq(t, t), EqAxiom("refl"))


def sym_fact(b: ProofBuilder, s: Term, t: Term) -> int:
    return b.add(Imp(Eq(s, t), Eq(t, s)), EqAxiom("sym"))


def trans_fact(b: ProofBuilder, s: Term, t: Term, u: Term) -> int:
    return b.add(Imp(Eq(s, t), Imp(Eq(t, u), Eq(s, u))), EqAxiom("trans"))


def fn_congruence(b: ProofBuilder, symbol: str, us: Sequence[Term], vs: Sequence[Term]) -> int:
    """``u1 = v1 & ... & un = vn -> f(u) = f(v)``."""
    premise = conjunction([Eq(u, v) for u, v in zip(us, vs)])
    if premise is None:
        raise PreconditionError(f"Congruence for nullary symbol {symbol}")
    return b.add(Imp(premise, Eq(Fn(symbol, tuple(us)), Fn(symbol, tuple(vs)))), EqAxiom("fn"))


def pred_congruence(b: ProofBuilder, symbol: str, us: Sequence[Term], vs: Sequence[Term]) -> int:
    premise = conjunction([Eq(u, v) for u, v in zip(us, vs)])
    if premise is None:
        raise PreconditionError(f"Congruence for nullary predicate {symbol}")
    return b.add(Imp(premise, Imp(Pred(symbol, tuple(us)), Pred(symbol, tuple(vs)))), EqAxiom("pred"))


def symmetric(b: ProofBuilder, line: int) -> int:
    """From ``s = t`` get ``t = s``."""
    f = b.formula(line)
    assert isinstance(f, Eq)
    if f.left is f.right:
        return line
    return b.mp(line, sym_fact(b, f.left, f.right))


def transitive(b: ProofBuilder, first: int, second: int) -> int:
    f, g = b.formula(first), b.formula(second)
    assert isinstance(f, Eq) and isinstance(g, Eq) and f.right is g.left
    if f.left is f.right:
        return second
    if g.left is g.right:
        return first
    return b.mp(second, b.mp(first, trans_fact(b, f.left, f.right, g.right)))


def eq_chain(b: ProofBuilder, source: Term, target: Term, known: Sequence[int]) -> Optional[int]:
    """Prove ``source = target`` from equations already proved, or ``None`` if they do not connect."""
    if source is target:
        return refl(b, source)
    edges: Dict[Term, List[Tuple[Term, int, bool]]] = {}
    for k in known:
        f = b.formula(k)
        if not isinstance(f, Eq):
            continue
        edges.setdefault(f.left, []).append((f.right, k, False))
        edges.setdefault(f.right, []).append((f.left, k, True))
    parent: Dict[Term, Tuple[Term, int, bool]] = {}
    queue = deque([source])
    seen = {source}
    while queue and target not in seen:
        node = queue.popleft()
        for nxt, k, flipped in edges.get(node, []):
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (node, k, flipped)
                queue.append(nxt)
    if target not in seen:
        return None
    steps: List[Tuple[int, bool]] = []
    node = target
    while node is not source:
        prev, k, flipped = parent[node]
        steps.append((k, flipped))
        node = prev
    current: Optional[int] = None
    for k, flipped in reversed(steps):
        edge = symmetric(b, k) if flipped else k
        current = edge if current is None else transitive(b, current, edge)
    return current


def instantiate_universal(b: ProofBuilder, line: int, t: Term) -> int:
    """From ``forall x. B(x)`` get ``B(t)``."""
    f = b.formula(line)
    if not isinstance(f, Forall):
        raise PreconditionError(f"Not a universal formula: {f!r}")
    return b.mp(line, b.add(Imp(f, instantiate(f.body, t)), ForallMinus()))


def witness_existential(b: ProofBuilder, line: int, target: Exists) -> int:
    """From ``B(t)`` get ``exists x. B(x)``."""
    return b.mp(line, b.add(Imp(b.formula(line), target), ExistsPlus()))


def generalize(b: ProofBuilder, line: int, eigenvariable: str, hint: str = "x") -> int:
    """From ``C -> B(a)`` get ``C -> forall x. B(x)``."""
    f = b.formula(line)
    if not isinstance(f, Imp):
        raise PreconditionError(f"Generalization needs an implication, got {f!r}")
    quantified = Forall(abstract(f.right, eigenvariable), hint)
    return b.add(Imp(f.left, quantified), ForallPlus(line, eigenvariable))


def generalize_antecedent(b: ProofBuilder, line: int, eigenvariable: str, hint: str = "x") -> int:
    """From ``B(a) -> C`` get ``(exists x. B(x)) -> C``."""
    f = b.formula(line)
    if not isinstance(f, Imp):
        raise PreconditionError(f"Generalization needs an implication, got {f!r}")
    quantified = Exists(abstract(f.left, eigenvariable), hint)
    return b.add(Imp(quantified, f.right), ExistsMinus(line, eigenvariable))


def generalize_closed(b: ProofBuilder, line: int, eigenvariable: str, hint: str = "x") -> int:
    """From ``B(a)`` get ``forall x. B(x)`` through the anchor ``Q -> Q`` with ``Q`` the result."""
    f = b.formula(line)
    quantified = Forall(abstract(f, eigenvariable), hint)
    anchor = Imp(quantified, quantified)
    conditional = derive(b, Imp(anchor, f), [line])
    general = generalize(b, conditional, eigenvariable, hint)
    return b.mp(b.tautology(anchor), general)


def fresh_eigenvariable(b: ProofBuilder, avoid: Iterable[str] = (), prefix: str = "_e") -> Var:
    taken = set(avoid)
    for a in b.axioms:
        taken |= a.free_vars
    return fresh_var(prefix, taken)
