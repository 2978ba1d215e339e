"""Seeded random proofs in the ε-calculus with ε-equality.

A generated proof lists critical and ε-equality formulas, then derives its
conclusion from them by one tautology and modus ponens. The conclusion is
either an ε-free valid formula or the conjunction of the listed formulas.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from ..errors import PreconditionError
from ..kernel import (
    Eps,
    Eq,
    Formula,
    Imp,
    Not,
    Or,
    Term,
    Var,
    bind_eps,
    conjunction,
    const,
    fn,
    implies,
    instantiate,
    pred,
)
from ..proofsys import EC_EPS_EQ, EC_EPS_EQ1, Critical, EpsEquality, EqualityMode, Proof, ProofBuilder, System

GOALS = ("eps-free", "herbrand")

Template = Callable[[Sequence[Term]], Eps]


@dataclass(frozen=True)
class MatrixShape:
    name: str
    arity: int
    rank: int
    build: Template


def _x() -> Var:
    return Var("x")


def _y() -> Var:
    return Var("y")


SHAPES: List[MatrixShape] = [
    MatrixShape("P", 0, 1, lambda a: bind_eps("x", pred("P", _x()))),
    MatrixShape("Q", 1, 1, lambda a: bind_eps("x", pred("Q", _x(), a[0]))),
    MatrixShape("R", 2, 1, lambda a: bind_eps("x", pred("R", _x(), a[0], a[1]))),
    MatrixShape("QQ", 0, 2, lambda a: bind_eps("x", pred("Q", _x(), bind_eps("y", pred("Q", _y(), _x()))))),
    MatrixShape("RQ", 1, 2, lambda a: bind_eps("x", pred("R", _x(), bind_eps("y", pred("Q", _y(), _x())), a[0]))),
]


@dataclass
class GeneratedProof:
    proof: Proof
    system: System
    seed: int
    kinds: List[str] = field(default_factory=list)

    @property
    def conclusion(self) -> Formula:
        return self.proof.conclusion


class ProofGenerator:
    """Random proofs with at most ``max_cc`` initial formulas of bounded rank and arity."""

    def __init__(
        self,
        seed: int,
        max_cc: int = 6,
        max_rank: int = 2,
        max_arity: int = 2,
        mode: EqualityMode = EqualityMode.MATRIX,
    ):
        if mode not in (EqualityMode.MATRIX, EqualityMode.POSITIONAL):
            raise PreconditionError(f"Cannot generate proofs for {mode.value} ε-equality")
        if max_cc < 1 or max_rank < 1:
            raise PreconditionError("max_cc and max_rank must be positive")
        self._seed = seed
        self._rng = random.Random(seed)
        self._max_cc = max_cc
        self._mode = mode
        self._shapes = [s for s in SHAPES if s.rank <= max_rank and s.arity <= max_arity]
        self._linked = [s for s in self._shapes if s.arity > 0]

    @property
    def system(self) -> System:
        return EC_EPS_EQ if self._mode is EqualityMode.MATRIX else EC_EPS_EQ1

    def _base_term(self) -> Term:
        rng = self._rng
        c = const(rng.choice("abc"))
        return fn("f", c) if rng.random() < 0.25 else c

    def _term(self) -> Term:
        if self._rng.random() < 0.2:
            return SHAPES[0].build(())
        return self._base_term()

    def _instance(self, shape: MatrixShape) -> Eps:
        return shape.build([self._term() for _ in range(shape.arity)])

    def _critical(self, b: ProofBuilder) -> Formula:
        e = self._instance(self._rng.choice(self._shapes))
        witness = self._term()
        f = Imp(instantiate(e.body, witness), instantiate(e.body, e))
        b.add(f, Critical(e, witness))
        return instantiate(e.body, witness)

    def _eps_equality(self, b: ProofBuilder) -> None:
        rng = self._rng
        shape = rng.choice(self._linked)
        us = [self._term() for _ in range(shape.arity)]
        vs = list(us)
        position = rng.randrange(shape.arity)
        while vs[position] is us[position]:
            vs[position] = self._term()
        if self._mode is EqualityMode.MATRIX:
            for i in range(shape.arity):
                if i != position and rng.random() < 0.3:
                    vs[i] = self._term()
        left, right = shape.build(us), shape.build(vs)
        if self._mode is EqualityMode.POSITIONAL:
            b.add(Imp(Eq(us[position], vs[position]), Eq(left, right)), EpsEquality(position))
        else:
            premise = conjunction([Eq(u, v) for u, v in zip(us, vs)])
            assert premise is not None
            b.add(Imp(premise, Eq(left, right)), EpsEquality())

    def generate(self, goal: str = "eps-free", cc: Optional[int] = None) -> GeneratedProof:
        if goal not in GOALS:
            raise PreconditionError(f"Unsupported goal '{goal}'. Supported goals: {', '.join(GOALS)}")
        rng = self._rng
        count = cc if cc is not None else rng.randint(1, self._max_cc)
        b = ProofBuilder()
        kinds: List[str] = []
        witnesses: List[Formula] = []
        for _ in range(count):
            if self._linked and rng.random() < 0.4:
                self._eps_equality(b)
                kinds.append("epseq")
            else:
                witnesses.append(self._critical(b))
                kinds.append("critical")
        premises = [line.formula for line in b.lines]
        lines = list(range(len(premises)))
        if goal == "herbrand":
            conclusion = conjunction(premises)
        else:
            eps_free = [w for w in dict.fromkeys(witnesses) if not w.has_eps]
            conclusion = conjunction([Imp(w, w) for w in eps_free])
            if conclusion is None:
                p = pred("P", const("a"))
                conclusion = Or(p, Not(p))
        assert conclusion is not None
        tautology = b.tautology(implies(premises, conclusion))
        b.mp_chain(lines, tautology)
        return GeneratedProof(b.build(conclusion), self.system, self._seed, kinds)


def corpus(
    size: int,
    seed: int = 0,
    goal: str = "eps-free",
    max_cc: int = 6,
    max_rank: int = 2,
    max_arity: int = 2,
    mode: EqualityMode = EqualityMode.MATRIX,
) -> List[GeneratedProof]:
    """``size`` proofs, the ``i``-th generated from seed ``seed + i``."""
    return [
        ProofGenerator(seed + i, max_cc, max_rank, max_arity, mode).generate(goal)
        for i in range(size)
    ]
