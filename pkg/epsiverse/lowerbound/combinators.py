"""Combinatory logic over kernel terms.

Application is the left-associative binary symbol ``@``, so combinatory terms
are ordinary first-order terms and can appear in proofs unchanged. The
combinators obey

    S x y z -> x z (y z)    B x y z -> x (y z)    C x y z -> x z y    I x -> x

:class:`PReduction` adds the rules ``p M -> 0`` when the normal form ``M`` is
``q^j`` with ``j < k`` and ``p M -> 1`` otherwise.
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import PreconditionError, ResourceLimitError
from ..kernel import Fn, Term, Var, const

logger = logging.getLogger(__name__)

APP = "@"

S = const("S")
B = const("B")
C = const("C")
I = const("I")  # noqa: E741
P = const("p")
Q = const("q")
ZERO = const("0")
ONE = const("1")

# S B (C B I)
T = Fn(APP, (Fn(APP, (S, B)), Fn(APP, (Fn(APP, (C, B)), I))))


def app(head: Term, *args: Term) -> Term:
    """``head a1 ... an``, associated to the left."""
    for a in args:
        head = Fn(APP, (head, a))
    return head


def spine(t: Term) -> Tuple[Term, List[Term]]:
    args: List[Term] = []
    while isinstance(t, Fn) and t.symbol == APP and len(t.args) == 2:
        args.append(t.args[1])
        t = t.args[0]
    args.reverse()
    return t, args


def t_n(n: int) -> Term:
    """``T_1 = T`` and ``T_{n+1} = T_n T``."""
    if n < 1:
        raise PreconditionError(f"T_n is defined for n >= 1, got {n}")
    term = T
    for _ in range(n - 1):
        term = app(term, T)
    return term


def q_power(j: int) -> Term:
    """``q^1 = q`` and ``q^{j+1} = q (q^j)``."""
    if j < 1:
        raise PreconditionError(f"q^j is defined for j >= 1, got {j}")
    term: Term = Q
    for _ in range(j - 1):
        term = app(Q, term)
    return term


def q_exponent(t: Term) -> Optional[int]:
    """``j`` if ``t`` is ``q^j``."""
    j = 1
    while t is not Q:
        head, args = spine(t)
        if head is not Q or len(args) != 1:
            return None
        t = args[0]
        j += 1
    return j


class Reduction:
    """The four combinator rules."""

    arities: Dict[Term, int] = {S: 3, B: 3, C: 3, I: 1}

    def contract(self, head: Term, args: Sequence[Term]) -> Optional[Term]:
        """Contract the redex at the head of a spine, or ``None``."""
        need = self.arities.get(head)
        if need is None or len(args) < need:
            return None
        x = args[0]
        if head is I:
            out = x
        else:
            y, z = args[1], args[2]
            if head is S:
                out = app(x, z, app(y, z))
            elif head is B:
                out = app(x, app(y, z))
            else:
                out = app(x, z, y)
        return app(out, *args[need:])


class PReduction(Reduction):
    def __init__(self, k: int):
        if k < 2:
            raise PreconditionError(f"The separating exponent must exceed 1, got {k}")
        self.k = k

    def contract(self, head: Term, args: Sequence[Term]) -> Optional[Term]:
        if head is P and args:
            m = args[0]
            if step_outermost(m, self) is not None:
                return None
            j = q_exponent(m)
            value = ZERO if j is not None and j < self.k else ONE
            return app(value, *args[1:])
        return super().contract(head, args)


def _respine(head: Term, args: Sequence[Term], i: int, new: Term) -> Term:
    return app(head, *args[:i], new, *args[i + 1 :])


def _step_inside(head: Term, args: List[Term], rules: Reduction, step: "Strategy") -> Optional[Term]:
    if isinstance(head, Fn) and head.symbol != APP and head.args:
        for i, a in enumerate(head.args):
            s = step(a, rules)
            if s is not None:
                inner = Fn(head.symbol, head.args[:i] + (s,) + head.args[i + 1 :])
                return app(inner, *args)
    for i, a in enumerate(args):
        s = step(a, rules)
        if s is not None:
            return _respine(head, args, i, s)
    return None


def step_outermost(t: Term, rules: Reduction) -> Optional[Term]:
    """One leftmost-outermost step, or ``None`` for a normal form."""
    head, args = spine(t)
    contracted = rules.contract(head, args)
    if contracted is not None:
        return contracted
    return _step_inside(head, args, rules, step_outermost)


def step_innermost(t: Term, rules: Reduction) -> Optional[Term]:
    """One leftmost-innermost step: arguments are normalized before the head redex."""
    head, args = spine(t)
    inside = _step_inside(head, args, rules, step_innermost)
    if inside is not None:
        return inside
    return rules.contract(head, args)


Strategy = Callable[[Term, Reduction], Optional[Term]]

STRATEGIES: Dict[str, Strategy] = {
    "leftmost-outermost": step_outermost,
    "leftmost-innermost": step_innermost,
}


@dataclass
class Normalization:
    term: Term
    steps: int
    complete: bool = True


class NormalizationLimit(ResourceLimitError):
    def __init__(self, message: str, partial: Normalization):
        super().__init__(message)
        self.partial = partial


def comb_normalize(
    t: Term,
    strategy: str = "leftmost-outermost",
    max_steps: int = 100_000,
    rules: Optional[Reduction] = None,
    strict: bool = True,
) -> Normalization:
    """Reduce ``t`` to normal form.

    Past ``max_steps`` the partial result is raised inside :class:`NormalizationLimit`,
    or returned with ``complete=False`` when ``strict`` is off.
    """
    try:
        step = STRATEGIES[strategy]
    except KeyError:
        supported = ", ".join(STRATEGIES.keys())
        raise PreconditionError(f"Unsupported strategy '{strategy}'. Supported strategies: {supported}")
    rules = rules or Reduction()
    steps = 0
    while True:
        nxt = step(t, rules)
        if nxt is None:
            return Normalization(t, steps)
        if steps >= max_steps:
            partial = Normalization(t, steps, complete=False)
            if strict:
                raise NormalizationLimit(f"No normal form within {max_steps} steps", partial)
            return partial
        t = nxt
        steps += 1


def is_normal(t: Term, rules: Optional[Reduction] = None) -> bool:
    return step_outermost(t, rules or Reduction()) is None


def random_comb_term(rng: random.Random, max_nodes: int = 12, atoms: Sequence[Term] = (S, B, C, I, Q, Var("x"))) -> Term:
    """A random application tree with at most ``max_nodes`` leaves and applications."""
    budget = max(1, max_nodes)

    def grow(size: int) -> Term:
        if size <= 2 or rng.random() < 0.25:
            return rng.choice(list(atoms))
        left = rng.randint(1, size - 2)
        return app(grow(left), grow(size - 1 - left))

    return grow(rng.randint(1, budget))


def separating_exponent(n: int, instances: Sequence[Term]) -> Optional[int]:
    """An exponent ``k`` under which ``p q = p (T_n q q)`` fails while every ``p M = p (q M)`` holds.

    ``instances`` are the normal-form terms ``M`` of the instances. Such a ``k``
    exists whenever there are fewer than half as many instances as the length
    of the normal form of ``T_n q q``.
    """
    top = q_exponent(comb_normalize(app(t_n(n), Q, Q)).term)
    assert top is not None
    blocked = set()
    for m in instances:
        for term in (m, app(Q, m)):
            j = q_exponent(term)
            if j is not None:
                blocked.add(j)
    for k in range(2, top + 1):
        if k in blocked:
            continue
        rules = PReduction(k)
        lhs = comb_normalize(app(P, Q), rules=rules).term
        rhs = comb_normalize(app(P, app(t_n(n), Q, Q)), rules=rules).term
        if lhs is rhs:
            continue
        if all(
            comb_normalize(app(P, m), rules=rules).term is comb_normalize(app(P, app(Q, m)), rules=rules).term
            for m in instances
        ):
            logger.debug(f"Exponent {k} separates E_{n} from {len(instances)} instance(s)")
            return k
    return None
