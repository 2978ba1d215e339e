"""Statman's family ``E_n = (p q = p (T_n q q))`` and its short quantified proofs.

``H_m(w)`` is the membership formula unfolded over the hierarchy

    H_1(w)     = forall z. p z = p (w z)
    H_{m+1}(w) = forall x. H_m(x) -> H_m(w x)

Every proof returned here is a PC= proof whose conclusion discharges the
combinator axioms, and the hypothesis ``H_1(q)`` where present.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import PreconditionError
from ..kernel import And, Eq, Forall, Formula, Imp, Term, Var, abstract, bind_forall, conjunction, instantiate
from ..proofsys import (
    PC_EQ,
    EqualityMode,
    ForallMinus,
    Proof,
    ProofBuilder,
    analyze,
    deduction_transform,
    derive,
    fn_congruence,
    generalize,
    generalize_closed,
    instantiate_universal,
    refl,
    symmetric,
    trans_fact,
    transitive,
)
from ..eliminate.identity import Congruence
from .combinators import APP, B, C, I, P, Q, S, T, app, t_n

logger = logging.getLogger(__name__)


def _forall3(build: Callable[[Term, Term, Term], Formula]) -> Formula:
    x, y, z = Var("x"), Var("y"), Var("z")
    return bind_forall("x", bind_forall("y", bind_forall("z", build(x, y, z))))


S_AXIOM = _forall3(lambda x, y, z: Eq(app(S, x, y, z), app(x, z, app(y, z))))
B_AXIOM = _forall3(lambda x, y, z: Eq(app(B, x, y, z), app(x, app(y, z))))
C_AXIOM = _forall3(lambda x, y, z: Eq(app(C, x, y, z), app(x, z, y)))
I_AXIOM = bind_forall("x", Eq(app(I, Var("x")), Var("x")))

LAMBDA_I: Tuple[Formula, ...] = (S_AXIOM, B_AXIOM, C_AXIOM, I_AXIOM)
COMBINATOR_AXIOMS: Formula = conjunction(list(LAMBDA_I))  # type: ignore[assignment]


def _unused(name: str, t: Term) -> str:
    while name in t.free_vars:
        name += "'"
    return name


@lru_cache(maxsize=None)
def member(level: int, w: Term) -> Formula:
    """``H_level(w)``."""
    if level < 1:
        raise PreconditionError(f"Membership levels start at 1, got {level}")
    m = Var(_unused("_m", w))
    if level == 1:
        return Forall(abstract(Eq(app(P, m), app(P, app(w, m))), m.name), "z")
    body = Imp(member(level - 1, m), member(level - 1, app(w, m)))
    return Forall(abstract(body, m.name), "x")


def e_n(n: int) -> Formula:
    return Eq(app(P, Q), app(P, app(t_n(n), Q, Q)))


def eq_t() -> Formula:
    """``forall t u. T t u = t (t u)``."""
    t, u = Var("t"), Var("u")
    return bind_forall("t", bind_forall("u", Eq(app(T, t, u), app(t, app(t, u)))))


@dataclass
class LowerBoundFamily:
    n: int
    term: Term
    formula: Formula
    proof: Optional[Proof] = None

    def membership(self, level: int, w: Optional[Term] = None) -> Formula:
        return member(level, self.term if w is None else w)

    @property
    def normal_form_length(self) -> int:
        """Occurrences of ``q`` in the normal form of ``T_n q q``: ``2_n^1 + 1``."""
        return tower(self.n) + 1


def tower(n: int) -> int:
    """``2_n^1``: ``2_0^1 = 1`` and ``2_{n+1}^1 = 2^(2_n^1)``."""
    out = 1
    for _ in range(n):
        out = 2**out
    return out


def build_family(n: int, prove: bool = True) -> LowerBoundFamily:
    if n < 1:
        raise PreconditionError(f"The family starts at n = 1, got {n}")
    return LowerBoundFamily(n, t_n(n), e_n(n), gen_linear_proof(n) if prove else None)


class _Lemmas:
    """Builds the lemma lines of the linear proof inside one builder."""

    def __init__(self, b: ProofBuilder):
        self.b = b
        self._axioms: Dict[Formula, int] = {}
        self._eq_t: Optional[int] = None
        self._transport: Dict[int, int] = {}
        self._membership: Dict[int, int] = {}

    def axiom(self, formula: Formula) -> int:
        line = self._axioms.get(formula)
        if line is None:
            line = derive(self.b, formula, [self.b.axiom(COMBINATOR_AXIOMS)])
            self._axioms[formula] = line
        return line

    def forall_minus(self, formula: Formula, t: Term) -> int:
        assert isinstance(formula, Forall)
        return self.b.add(Imp(formula, instantiate(formula.body, t)), ForallMinus())

    def instance(self, line: int, *terms: Term) -> int:
        for t in terms:
            line = instantiate_universal(self.b, line, t)
        return line

    def lift(self, context: Term, hole: str, line: int) -> int:
        """From ``l = r`` get ``context[l] = context[r]``."""
        if context is Var(hole):
            return line
        f = self.b.formula(line)
        assert isinstance(f, Eq)
        fact = Congruence(self.b, EqualityMode.MATRIX, {hole: f.left}, {hole: f.right}, {hole: line}).fact(context)
        assert fact is not None
        return fact

    def eq_t_chain(self, t: Term, u: Term) -> int:
        """``T t u = t (t u)`` from the combinator axioms."""
        h = Var("_hole")
        k = app(C, B, I)
        steps = [
            self.lift(app(h, u), h.name, self.instance(self.axiom(S_AXIOM), B, k, t)),
            self.instance(self.axiom(B_AXIOM), t, app(k, t), u),
            self.lift(app(t, app(h, u)), h.name, self.instance(self.axiom(C_AXIOM), B, I, t)),
            self.lift(app(t, h), h.name, self.instance(self.axiom(B_AXIOM), t, I, u)),
            self.lift(app(t, app(t, h)), h.name, self.instance(self.axiom(I_AXIOM), u)),
        ]
        return reduce(lambda a, c: transitive(self.b, a, c), steps)

    def eq_t(self) -> int:
        if self._eq_t is None:
            line = self.eq_t_chain(Var("_t"), Var("_u"))
            line = generalize_closed(self.b, line, "_u", "u")
            self._eq_t = generalize_closed(self.b, line, "_t", "t")
            assert self.b.formula(self._eq_t) is eq_t()
        return self._eq_t

    def transport(self, level: int) -> int:
        """``forall w v. w = v -> H_level(w) -> H_level(v)``."""
        if level in self._transport:
            return self._transport[level]
        b = self.b
        w, v, a = Var("_w"), Var("_v"), Var("_a")
        wa, va = app(w, a), app(v, a)
        premises = [self.forall_minus(member(level, w), a), refl(b, a), fn_congruence(b, APP, [w, a], [v, a])]
        if level == 1:
            premises += [
                refl(b, P),
                fn_congruence(b, APP, [P, wa], [P, va]),
                trans_fact(b, app(P, a), app(P, wa), app(P, va)),
            ]
            step: Formula = Eq(app(P, a), app(P, va))
        else:
            premises.append(self.instance(self.transport(level - 1), wa, va))
            step = Imp(member(level - 1, a), member(level - 1, va))
        line = derive(b, Imp(And(Eq(w, v), member(level, w)), step), premises)
        line = generalize(b, line, a.name, "z" if level == 1 else "x")
        line = derive(b, Imp(Eq(w, v), Imp(member(level, w), member(level, v))), [line])
        line = generalize_closed(b, line, v.name, "v")
        self._transport[level] = generalize_closed(b, line, w.name, "w")
        return self._transport[level]

    def membership(self, level: int) -> int:
        """``T`` in ``H_level`` for ``level >= 2``."""
        if level in self._membership:
            return self._membership[level]
        b = self.b
        m = level - 1
        z, y = Var("_z"), Var("_y")
        zy, zzy, tzy = app(z, y), app(z, app(z, y)), app(T, z, y)
        hz = member(m, z)
        swapped = symmetric(b, self.instance(self.eq_t(), z, y))
        premises = [self.forall_minus(hz, y), self.forall_minus(hz, zy), swapped]
        if m == 1:
            premises += [
                refl(b, P),
                fn_congruence(b, APP, [P, zzy], [P, tzy]),
                trans_fact(b, app(P, y), app(P, zy), app(P, zzy)),
                trans_fact(b, app(P, y), app(P, zzy), app(P, tzy)),
            ]
            step: Formula = Eq(app(P, y), app(P, tzy))
        else:
            premises.append(self.instance(self.transport(m - 1), zzy, tzy))
            step = Imp(member(m - 1, y), member(m - 1, tzy))
        line = derive(b, Imp(hz, step), premises)
        line = generalize(b, line, y.name, "z" if m == 1 else "x")
        self._membership[level] = generalize_closed(b, line, z.name, "z")
        assert b.formula(self._membership[level]) is member(level, T)
        return self._membership[level]


def _discharge(proof: Proof, hypotheses: Sequence[Formula]) -> Proof:
    for h in reversed(hypotheses):
        proof = deduction_transform(proof, h)
    return proof


def gen_eq_t_proof(t: Optional[Term] = None, u: Optional[Term] = None) -> Proof:
    """A proof of ``λI -> T t u = t (t u)`` with twelve ∀⁻ instances."""
    t = t if t is not None else Var("t")
    u = u if u is not None else Var("u")
    b = ProofBuilder([COMBINATOR_AXIOMS])
    line = _Lemmas(b).eq_t_chain(t, u)
    return _discharge(b.build(b.formula(line)), [COMBINATOR_AXIOMS])


def gen_linear_proof(n: int) -> Proof:
    """A proof of ``λI -> H_1(q) -> E_n`` whose cc grows linearly in ``n``.

    ``T`` is shown to lie in ``H_2`` up to ``H_{n+1}``; instantiating each level
    at ``T`` climbs down from ``T_1`` in ``H_{n+1}`` to ``T_n`` in ``H_2``.
    """
    if n < 1:
        raise PreconditionError(f"The family starts at n = 1, got {n}")
    hypothesis = member(1, Q)
    b = ProofBuilder([COMBINATOR_AXIOMS, hypothesis])
    lemmas = _Lemmas(b)
    current = lemmas.membership(n + 1)
    for k in range(1, n):
        level = n + 1 - k
        current = b.mp(lemmas.membership(level), lemmas.instance(current, T))
    on_q = b.mp(b.axiom(hypothesis), lemmas.instance(current, Q))
    goal = lemmas.instance(on_q, Q)
    assert b.formula(goal) is e_n(n)
    logger.debug(f"Proof of E_{n} has {len(b)} lines before discharging hypotheses")
    return _discharge(b.build(e_n(n)), [COMBINATOR_AXIOMS, hypothesis])


def statman_conclusion(n: int) -> Formula:
    return Imp(COMBINATOR_AXIOMS, Imp(member(1, Q), e_n(n)))


def bench_statman(sizes: Sequence[int]) -> List[Tuple[int, int, int]]:
    """``(n, cc, lines)`` per size."""
    rows = []
    for n in sizes:
        proof = gen_linear_proof(n)
        rows.append((n, analyze(PC_EQ, proof).report.cc, len(proof)))
        logger.info(f"n={n}: cc={rows[-1][1]} lines={rows[-1][2]}")
    return rows
