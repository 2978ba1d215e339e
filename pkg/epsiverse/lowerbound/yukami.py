"""Yukami's trick: ``0^k = 0`` with a constant number of quantifier instances.

``0^0 = 0`` and ``0^k = 0 + 0^(k-1)``. The two identity instances in the
context ``Γ`` do the work that would otherwise need ``k`` instances of the
cancellation axiom.
"""

import logging
from typing import List, Sequence, Tuple

from ..errors import PreconditionError
from ..kernel import (
    And,
    Eps,
    Eq,
    Formula,
    Imp,
    Term,
    Var,
    bind_eps,
    bind_forall,
    const,
    fn,
    implies,
    instantiate,
    replace,
    substitute,
)
from ..proofsys import (
    EC_EPS_EQ_U,
    PC_EQ,
    Critical,
    EpsEquality,
    EqualityMode,
    Proof,
    ProofBuilder,
    System,
    analyze,
    derive,
    instantiate_universal,
    refl,
    sym_fact,
    trans_fact,
)

logger = logging.getLogger(__name__)

ZERO = const("0")
HOLE = "_r"


def plus(a: Term, b: Term) -> Term:
    return fn("+", a, b)


def zero_power(k: int) -> Term:
    if k < 0:
        raise PreconditionError(f"Negative exponent {k}")
    out = ZERO
    for _ in range(k):
        out = plus(ZERO, out)
    return out


def _sum(summands: Sequence[Term], last: Term) -> Term:
    out = last
    for s in reversed(summands):
        out = plus(s, out)
    return out


def yukami_contexts(k: int) -> Tuple[Term, Term]:
    """``r1(x)`` and ``r2[x]`` over the hole variable ``_r``.

    ``r1(0+0)`` is ``0^k + A`` and ``r2[0]`` is ``A``, where ``A`` sums
    ``0^(k-1), ..., 0^0``; ``r2[0+0]`` and ``r1(0)`` coincide.
    """
    if k < 1:
        raise PreconditionError(f"Yukami's family starts at k = 1, got {k}")
    hole = Var(HOLE)
    lower = [zero_power(j) for j in range(k - 1, 0, -1)]
    whole = _sum([zero_power(k)] + lower, ZERO)
    r1 = replace(whole, {zero_power(1): hole})
    r2 = _sum(lower, hole)
    assert substitute(r2, {HOLE: zero_power(1)}) is substitute(r1, {HOLE: ZERO})
    return r1, r2


def transitivity_axiom() -> Formula:
    x, y, z = Var("x"), Var("y"), Var("z")
    return bind_forall("x", bind_forall("y", bind_forall("z", Imp(And(Eq(x, y), Eq(y, z)), Eq(x, z)))))


def cancellation_axiom() -> Formula:
    x, y = Var("x"), Var("y")
    return bind_forall("x", bind_forall("y", Imp(Eq(plus(x, y), y), Eq(x, ZERO))))


def yukami_axioms(k: int) -> List[Formula]:
    r1, r2 = yukami_contexts(k)
    base = Eq(zero_power(1), ZERO)

    def identity(context: Term) -> Formula:
        return Imp(base, Eq(substitute(context, {HOLE: zero_power(1)}), substitute(context, {HOLE: ZERO})))

    return [base, transitivity_axiom(), cancellation_axiom(), identity(r1), identity(r2)]


def gen_yukami_proof(k: int) -> Proof:
    """A proof of ``0^k = 0`` from :func:`yukami_axioms` with cc = 5 for every ``k``."""
    axioms = yukami_axioms(k)
    base, trans, cancel, inst1, inst2 = axioms
    b = ProofBuilder(axioms)
    known = b.axiom(base)
    first = b.mp(known, b.axiom(inst1))
    second = b.mp(known, b.axiom(inst2))
    f1, f2 = b.formula(first), b.formula(second)
    assert isinstance(f1, Eq) and isinstance(f2, Eq) and f1.right is f2.left
    chain = b.axiom(trans)
    for t in (f1.left, f1.right, f2.right):
        chain = instantiate_universal(b, chain, t)
    whole = derive(b, Eq(f1.left, f2.right), [first, second, chain])
    rule = b.axiom(cancel)
    for t in (zero_power(k), f2.right):
        rule = instantiate_universal(b, rule, t)
    goal = b.mp(whole, rule)
    assert b.formula(goal) is Eq(zero_power(k), ZERO)
    return b.build(b.formula(goal))


def bench_yukami(sizes: Sequence[int]) -> List[Tuple[int, int, int]]:
    """``(k, cc, lines)`` per size."""
    rows = []
    for k in sizes:
        proof = gen_yukami_proof(k)
        rows.append((k, analyze(PC_EQ, proof).report.cc, len(proof)))
        logger.info(f"k={k}: cc={rows[-1][1]} lines={rows[-1][2]}")
    return rows


def _naming_eps(t: Term) -> Eps:
    name = "_x"
    while name in t.free_vars:
        name += "'"
    return bind_eps(name, Eq(Var(name), t))


def gen_unrestricted_identity_proof(
    context: Term, s: Term, t: Term, hole: str = "a", system: System = EC_EPS_EQ_U
) -> Proof:
    """``s = t -> g(s) = g(t)`` from two critical formulas and one unrestricted ε-equality formula.

    ``g(s)`` is named by ``ε_x (x = g(s))``; the ε-equality formula relates the
    two names directly through ``s = t``, below the top of the term.
    """
    if system.eps_equality is not EqualityMode.UNRESTRICTED:
        raise PreconditionError(f"{system.name} does not allow unrestricted ε-equality formulas")
    gs, gt = substitute(context, {hole: s}), substitute(context, {hole: t})
    goal = Imp(Eq(s, t), Eq(gs, gt))
    b = ProofBuilder()
    if context is Var(hole):
        return b.build(b.formula(b.tautology(goal)))
    names = []
    for g in (gs, gt):
        e = _naming_eps(g)
        critical = b.add(Imp(instantiate(e.body, g), instantiate(e.body, e)), Critical(e, g))
        names.append((e, b.mp(refl(b, g), critical)))
    (es, named_s), (et, named_t) = names
    bridge = b.add(implies([Eq(s, t)], Eq(es, et)), EpsEquality())
    premises = [named_s, named_t, bridge, sym_fact(b, es, gs), trans_fact(b, gs, es, et), trans_fact(b, gs, et, gt)]
    derive(b, goal, premises)
    return b.build(goal)
