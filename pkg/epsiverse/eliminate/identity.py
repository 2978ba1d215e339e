"""Identity formulas: equal arguments give equivalent instances.

Everything here recurses over a template ``A(a; b)`` and two substitutions that
agree on ``a`` and send the ``b`` to ``u`` and ``v``. A function application
uses its congruence axiom, a closed ε-term one ε-equality formula (matrix
mode) or one per changed argument position (positional mode).
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import PreconditionError
from ..kernel import (
    Eps,
    EpsMatrix,
    Eq,
    Fn,
    Formula,
    Imp,
    Node,
    Pred,
    Quantifier,
    Term,
    Var,
    conjunction,
    degree,
    eps_matrix_of,
    instantiate,
    open_binder,
    substitute,
)
from ..proofsys import (
    Critical,
    EpsEquality,
    EqualityMode,
    Proof,
    ProofBuilder,
    System,
    check_proof,
    derive,
    discharge,
    fn_congruence,
    pred_congruence,
    refl,
    sym_fact,
    symmetric,
    trans_fact,
    transitive,
)

logger = logging.getLogger(__name__)

# bound variable of a matrix body once opened; parameters are "_a<i>"
HOLE = "_s"


class Congruence:
    """Proves ``l(n) = r(n)`` for terms and ``l(A) -> r(A)`` for formulas inside a builder.

    ``facts`` maps each name on which the substitutions ``left`` and ``right``
    differ to a line proving ``left[name] = right[name]``.
    """

    def __init__(
        self,
        b: ProofBuilder,
        mode: EqualityMode,
        left: Mapping[str, Term],
        right: Mapping[str, Term],
        facts: Mapping[str, int],
    ):
        self._b = b
        self._mode = mode
        self._left = dict(left)
        self._right = dict(right)
        self._changed = frozenset(n for n, t in self._left.items() if t is not self._right[n])
        missing = self._changed - set(facts)
        if missing:
            raise PreconditionError(f"No equation for changed names {sorted(missing)}")
        self._facts = dict(facts)
        self._terms: Dict[Term, Optional[int]] = {}
        self.eps_lines: List[int] = []

    def sides(self, node: Node) -> Tuple[Node, Node]:
        return substitute(node, self._left), substitute(node, self._right)

    def fact(self, t: Term) -> Optional[int]:
        """Line proving ``l(t) = r(t)``, or ``None`` when ``t`` mentions no changed name."""
        if self._changed.isdisjoint(t.free_vars):
            return None
        if t in self._terms:
            return self._terms[t]
        if isinstance(t, Var):
            line = self._facts[t.name]
        elif isinstance(t, Fn):
            line = self._fn(t)
        elif isinstance(t, Eps) and t.closed:
            line = self._eps(t)
        else:
            raise PreconditionError(f"Cannot relate the open semiterm {t!r}")
        self._terms[t] = line
        return line

    def _fact_or_refl(self, t: Term) -> int:
        line = self.fact(t)
        if line is None:
            return refl(self._b, substitute(t, self._left))
        return line

    def _fn(self, t: Fn) -> int:
        premises = [self._fact_or_refl(a) for a in t.args]
        us = [substitute(a, self._left) for a in t.args]
        vs = [substitute(a, self._right) for a in t.args]
        congruence = fn_congruence(self._b, t.symbol, us, vs)
        lhs, rhs = self.sides(t)
        return derive(self._b, Eq(lhs, rhs), premises + [congruence])

    def _eps(self, t: Eps) -> int:
        b = self._b
        g, args = eps_matrix_of(t)
        us = [substitute(a, self._left) for a in args]
        vs = [substitute(a, self._right) for a in args]
        if self._mode is EqualityMode.MATRIX:
            premise = conjunction([Eq(u, v) for u, v in zip(us, vs)])
            assert premise is not None
            axiom = b.add(Imp(premise, Eq(g.instantiate(us), g.instantiate(vs))), EpsEquality())
            self.eps_lines.append(axiom)
            goal = Eq(g.instantiate(us), g.instantiate(vs))
            return derive(b, goal, [self._fact_or_refl(a) for a in args] + [axiom])
        if self._mode is EqualityMode.POSITIONAL:
            current = list(us)
            line: Optional[int] = None
            for i, a in enumerate(args):
                known = self.fact(a)
                if known is None:
                    continue
                step_args = list(current)
                step_args[i] = vs[i]
                axiom = b.add(
                    Imp(Eq(current[i], vs[i]), Eq(g.instantiate(current), g.instantiate(step_args))),
                    EpsEquality(i),
                )
                self.eps_lines.append(axiom)
                step = b.mp(known, axiom)
                line = step if line is None else transitive(b, line, step)
                current = step_args
            assert line is not None
            return line
        raise PreconditionError(f"ε-terms cannot be related under ε-equality mode {self._mode.value}")

    def _pred(self, f: Pred) -> List[int]:
        b = self._b
        forward = [self._fact_or_refl(a) for a in f.args]
        backward = [symmetric(b, k) for k in forward]
        us = [substitute(a, self._left) for a in f.args]
        vs = [substitute(a, self._right) for a in f.args]
        p1, p2 = self.sides(f)
        there = derive(b, Imp(p1, p2), forward + [pred_congruence(b, f.symbol, us, vs)])  # type: ignore[arg-type]
        back = derive(b, Imp(p2, p1), backward + [pred_congruence(b, f.symbol, vs, us)])  # type: ignore[arg-type]
        return [there, back]

    def _transport(self, fl: int, fr: int, l1: Term, r1: Term, l2: Term, r2: Term) -> int:
        """From ``l1 = l2`` and ``r1 = r2`` prove ``l1 = r1 -> l2 = r2``."""
        b = self._b
        back = symmetric(b, fl)
        first = trans_fact(b, l2, l1, r1)
        second = trans_fact(b, l2, r1, r2)
        return derive(b, Imp(Eq(l1, r1), Eq(l2, r2)), [back, fr, first, second])

    def _eq(self, f: Eq) -> List[int]:
        fl = self._fact_or_refl(f.left)
        fr = self._fact_or_refl(f.right)
        l1, l2 = self.sides(f.left)
        r1, r2 = self.sides(f.right)
        there = self._transport(fl, fr, l1, r1, l2, r2)  # type: ignore[arg-type]
        back = self._transport(symmetric(self._b, fl), symmetric(self._b, fr), l2, r2, l1, r1)  # type: ignore[arg-type]
        return [there, back]

    def _atoms(self, f: Formula, out: List[int]) -> None:
        if self._changed.isdisjoint(f.free_vars):
            return
        if isinstance(f, Pred):
            out.extend(self._pred(f))
        elif isinstance(f, Eq):
            out.extend(self._eq(f))
        elif isinstance(f, Quantifier):
            raise PreconditionError(f"Identity formulas are built for quantifier-free templates, got {f!r}")
        else:
            for c in f.children():
                assert isinstance(c, Formula)
                self._atoms(c, out)

    def implication(self, template: Formula) -> int:
        """Line proving ``l(template) -> r(template)``."""
        f1, f2 = self.sides(template)
        if f1 is f2:
            return self._b.tautology(Imp(f1, f1))  # type: ignore[arg-type]
        atoms: List[int] = []
        self._atoms(template, atoms)
        return derive(self._b, Imp(f1, f2), atoms)  # type: ignore[arg-type]


def _check_occurrences(template: Formula, a: str, names: Sequence[str]) -> None:
    """Each name occurs once, and every term strictly above it mentions ``a`` or a bound variable."""
    counts = {n: 0 for n in names}

    def go(n: Node, guarded: bool) -> None:
        if isinstance(n, Var) and n.name in counts:
            counts[n.name] += 1
            if not guarded:
                raise PreconditionError(f"{n.name} occurs below a closed term without {a}")
            return
        inner = guarded and (not isinstance(n, Term) or a in n.free_vars or not n.closed)
        for c in n.children():
            go(c, inner)

    go(template, True)
    twice = [n for n, k in counts.items() if k != 1]
    if twice:
        raise PreconditionError(f"Names must occur exactly once in the template: {twice}")


def _bindings(a: str, s: Term, names: Sequence[str], terms: Sequence[Term]) -> Dict[str, Term]:
    binding = dict(zip(names, terms))
    binding[a] = s
    return binding


def _hypothesis_facts(
    b: ProofBuilder, hypothesis: Formula, names: Sequence[str], us: Sequence[Term], vs: Sequence[Term]
) -> Dict[str, int]:
    h = b.axiom(hypothesis)
    return {n: derive(b, Eq(u, v), [h]) for n, u, v in zip(names, us, vs) if u is not v}


def build_identity_proof(
    template: Formula,
    a: str,
    s: Term,
    names: Sequence[str],
    us: Sequence[Term],
    vs: Sequence[Term],
    mode: EqualityMode = EqualityMode.MATRIX,
) -> Proof:
    """A proof of ``u = v -> A(s; u) -> A(s; v)``, the premise a conjunction over the names."""
    if len(us) != len(names) or len(vs) != len(names):
        raise PreconditionError(f"{len(names)} names need as many terms on each side")
    _check_occurrences(template, a, names)
    left = _bindings(a, s, names, us)
    right = _bindings(a, s, names, vs)
    hypothesis = conjunction([Eq(u, v) for u, v in zip(us, vs)])
    if hypothesis is None:
        b = ProofBuilder()
        f = substitute(template, left)
        return b.build(b.formula(b.tautology(Imp(f, f))))
    b = ProofBuilder([hypothesis])
    facts = _hypothesis_facts(b, hypothesis, names, us, vs)
    line = Congruence(b, mode, left, right, facts).implication(template)
    return discharge(b.build(b.formula(line)), hypothesis)


def build_identity_proof_positional(
    template: Formula,
    a: str,
    s: Term,
    names: Sequence[str],
    us: Sequence[Term],
    position: int,
    v: Term,
) -> Proof:
    """A proof of ``u_i = v -> A(s; u) -> A(s; u[i := v])`` by positional ε-equality."""
    if not 0 <= position < len(names):
        raise PreconditionError(f"Position {position} outside 0..{len(names) - 1}")
    if len(us) != len(names):
        raise PreconditionError(f"{len(names)} names need as many terms")
    _check_occurrences(template, a, names)
    vs = list(us)
    vs[position] = v
    left = _bindings(a, s, names, us)
    right = _bindings(a, s, names, vs)
    hypothesis = Eq(us[position], v)
    b = ProofBuilder([hypothesis])
    facts = _hypothesis_facts(b, hypothesis, names, us, vs)
    line = Congruence(b, EqualityMode.POSITIONAL, left, right, facts).implication(template)
    return discharge(b.build(b.formula(line)), hypothesis)


def _count(sub: Node, node: Node) -> int:
    if node is sub:
        return 1
    return sum(_count(sub, c) for c in node.children())


def identity_chain_holds(system: System, proof: Proof) -> bool:
    """Whether the ε-equality formulas of a positional identity proof form a nested chain.

    On each side the ε-terms occur once inside the next and gain one degree per step.
    """
    result = check_proof(system, proof, measure=False)
    equalities = [i.eps_equality for i in result.lines if i is not None and i.eps_equality is not None]
    for side in ("left", "right"):
        terms = sorted({getattr(eq, side) for eq in equalities}, key=degree)
        for lower, upper in zip(terms, terms[1:]):
            if degree(upper) != degree(lower) + 1 or _count(lower, upper) != 1:
                return False
    return True


def matrix_template(g: EpsMatrix) -> Formula:
    """The body of ``g`` with its bound variable opened at :data:`HOLE`."""
    body, _ = open_binder(g.term, HOLE)
    return body


def transfer_critical(
    b: ProofBuilder,
    g: EpsMatrix,
    us: Sequence[Term],
    vs: Sequence[Term],
    witness: Term,
    facts: Mapping[str, int],
    mode: EqualityMode,
) -> int:
    """Line proving ``A(t; u) -> A(g(v); u)`` from lines ``facts[a_k]`` proving ``u_k = v_k``.

    The critical formula used belongs to ``g(v)``.
    """
    template = matrix_template(g)
    target = g.instantiate(vs)
    forward = Congruence(
        b, mode, _bindings(HOLE, witness, g.parameters, us), _bindings(HOLE, witness, g.parameters, vs), facts
    ).implication(template)
    critical = b.add(Imp(instantiate(target.body, witness), instantiate(target.body, target)), Critical(target, witness))
    back_facts = {n: symmetric(b, k) for n, k in facts.items()}
    backward = Congruence(
        b, mode, _bindings(HOLE, target, g.parameters, vs), _bindings(HOLE, target, g.parameters, us), back_facts
    ).implication(template)
    source = g.instantiate(us)
    goal = Imp(instantiate(source.body, witness), instantiate(source.body, target))
    return derive(b, goal, [forward, critical, backward])


def equate_instances(
    b: ProofBuilder,
    g: EpsMatrix,
    us: Sequence[Term],
    vs: Sequence[Term],
    ws: Sequence[Term],
    facts: Mapping[int, int],
    mode: EqualityMode,
) -> int:
    """Line proving ``H(w) -> g(v) = g(w)`` from lines ``facts[k]`` proving ``u_k = v_k``.

    ``H(w)`` is ``u = w`` over all positions in matrix mode and ``u_q = w_q`` in
    positional mode, where ``v`` and ``w`` each differ from ``u`` at one position.
    """
    if mode is EqualityMode.MATRIX:
        backs = [symmetric(b, facts[k]) if k in facts else refl(b, u) for k, u in enumerate(us)]
        transes = [trans_fact(b, v, u, w) for u, v, w in zip(us, vs, ws)]
        premise = conjunction([Eq(u, w) for u, w in zip(us, ws)])
        link = conjunction([Eq(v, w) for v, w in zip(vs, ws)])
        assert premise is not None and link is not None
        axiom = b.add(Imp(link, Eq(g.instantiate(vs), g.instantiate(ws))), EpsEquality())
        return derive(b, Imp(premise, Eq(g.instantiate(vs), g.instantiate(ws))), backs + transes + [axiom])
    if mode is not EqualityMode.POSITIONAL:
        raise PreconditionError(f"ε-terms cannot be related under ε-equality mode {mode.value}")
    p = _single_change(us, vs)
    q = _single_change(us, ws)
    back = symmetric(b, facts[p])
    goal_premise = Eq(us[q], ws[q])
    if p == q:
        link = trans_fact(b, vs[p], us[p], ws[p])
        axiom = b.add(Imp(Eq(vs[p], ws[p]), Eq(g.instantiate(vs), g.instantiate(ws))), EpsEquality(p))
        return derive(b, Imp(goal_premise, Eq(g.instantiate(vs), g.instantiate(ws))), [back, link, axiom])
    mixed = list(vs)
    mixed[q] = ws[q]
    first = b.add(Imp(Eq(us[q], ws[q]), Eq(g.instantiate(vs), g.instantiate(mixed))), EpsEquality(q))
    second = b.add(Imp(Eq(vs[p], us[p]), Eq(g.instantiate(mixed), g.instantiate(ws))), EpsEquality(p))
    chain = trans_fact(b, g.instantiate(vs), g.instantiate(mixed), g.instantiate(ws))
    return derive(b, Imp(goal_premise, Eq(g.instantiate(vs), g.instantiate(ws))), [back, first, second, chain])


def _single_change(us: Sequence[Term], vs: Sequence[Term]) -> int:
    changed = [i for i, (u, v) in enumerate(zip(us, vs)) if u is not v]
    if len(changed) != 1:
        raise PreconditionError(f"Argument vectors differ at {len(changed)} positions, expected exactly one")
    return changed[0]


def _degrees_allow(g: EpsMatrix, lower: Sequence[Term], upper: Sequence[Term]) -> None:
    if degree(g.instantiate(lower)) > degree(g.instantiate(upper)):
        raise PreconditionError(
            f"deg({g.instantiate(lower)}) exceeds deg({g.instantiate(upper)}); the substitution would raise the degree"
        )


def _premise(us: Sequence[Term], vs: Sequence[Term], mode: EqualityMode) -> Optional[Formula]:
    if mode is EqualityMode.POSITIONAL:
        p = _single_change(us, vs)
        return Eq(us[p], vs[p])
    return conjunction([Eq(u, v) for u, v in zip(us, vs)])


def subst_ca(
    g: EpsMatrix,
    us: Sequence[Term],
    vs: Sequence[Term],
    witnesses: Sequence[Term],
    mode: EqualityMode = EqualityMode.MATRIX,
) -> Proof:
    """From the axiom ``u = v`` prove ``A(t; u) -> A(g(v); u)`` for every witness ``t``.

    Only critical formulas of ``g(v)`` are used; the proof ends in the formula of the last witness.
    """
    if not witnesses:
        raise PreconditionError("At least one witness is needed")
    _degrees_allow(g, vs, us)
    hypothesis = _premise(us, vs, mode)
    b = ProofBuilder([hypothesis] if hypothesis is not None else [])
    facts: Dict[str, int] = {}
    if hypothesis is not None:
        facts = _hypothesis_facts(b, hypothesis, g.parameters, us, vs)
    last = -1
    for t in witnesses:
        last = transfer_critical(b, g, us, vs, t, facts, mode)
    return b.build(b.formula(last))


def subst_epseq(
    g: EpsMatrix,
    vs: Sequence[Term],
    ws: Sequence[Term],
    us: Sequence[Term],
    mode: EqualityMode = EqualityMode.MATRIX,
) -> Proof:
    """From the axiom ``v = u`` prove ``w = u -> g(v) = g(w)`` with a single ε-equality formula."""
    _degrees_allow(g, vs, us)
    _degrees_allow(g, ws, us)
    if mode is EqualityMode.POSITIONAL:
        p = _single_change(us, vs)
        q = _single_change(us, ws)
        if p != q:
            raise PreconditionError(f"Positions {p} and {q} differ; one positional ε-equality cannot link them")
        hypothesis: Formula = Eq(vs[p], us[p])
        b = ProofBuilder([hypothesis])
        anchor = b.axiom(hypothesis)
        flip = sym_fact(b, ws[p], us[p])
        link = trans_fact(b, vs[p], us[p], ws[p])
        axiom = b.add(Imp(Eq(vs[p], ws[p]), Eq(g.instantiate(vs), g.instantiate(ws))), EpsEquality(p))
        goal = Imp(Eq(ws[p], us[p]), Eq(g.instantiate(vs), g.instantiate(ws)))
        return b.build(b.formula(derive(b, goal, [anchor, flip, link, axiom])))
    assumed = conjunction([Eq(v, u) for v, u in zip(vs, us)])
    premise = conjunction([Eq(w, u) for w, u in zip(ws, us)])
    link_premise = conjunction([Eq(v, w) for v, w in zip(vs, ws)])
    if assumed is None or premise is None or link_premise is None:
        raise PreconditionError(f"Matrix {g} has no parameters")
    b = ProofBuilder([assumed])
    h = b.axiom(assumed)
    anchors = [derive(b, Eq(v, u), [h]) for v, u in zip(vs, us)]
    flips = [sym_fact(b, w, u) for w, u in zip(ws, us)]
    links = [trans_fact(b, v, u, w) for v, u, w in zip(vs, us, ws)]
    axiom = b.add(Imp(link_premise, Eq(g.instantiate(vs), g.instantiate(ws))), EpsEquality())
    goal = Imp(premise, Eq(g.instantiate(vs), g.instantiate(ws)))
    return b.build(b.formula(derive(b, goal, anchors + flips + links + [axiom])))
