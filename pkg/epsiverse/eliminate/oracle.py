"""Validity of quantifier-free formulas modulo equality, independent of the proof checker.

A countermodel is searched for over the formula's atoms. Partial assignments
that already make the formula true, or whose literals contradict each other
under congruence closure, are cut off.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from ..errors import PreconditionError, ResourceLimitError
from ..kernel import And, Eq, Fn, Formula, Imp, Node, Not, Or, Pred, Term, Var, format_formula

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    valid: bool
    metrics: Dict[str, Union[int, float]]
    countermodel: Optional[Dict[str, bool]] = None


class HerbrandOracle(ABC):
    @abstractmethod
    def decide(self, formula: Formula) -> OracleResult:
        pass


class UnionFind:
    def __init__(self) -> None:
        self._parent: Dict[Term, Term] = {}
        self._rank: Dict[Term, int] = {}

    def find(self, x: Term) -> Term:
        parent = self._parent
        if x not in parent:
            parent[x] = x
            self._rank[x] = 0
            return x
        # path halving
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: Term, b: Term) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra is rb:
            return False
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        return True


@dataclass
class CongruenceClosure:
    """Ground equalities closed under congruence of function applications."""

    uf: UnionFind = field(default_factory=UnionFind)
    applications: List[Fn] = field(default_factory=list)
    _known: Dict[Term, None] = field(default_factory=dict)

    def add_term(self, t: Term) -> None:
        if t in self._known:
            return
        if isinstance(t, Fn):
            for a in t.args:
                self.add_term(a)
            if t.args:
                self.applications.append(t)
        elif not isinstance(t, Var):
            raise PreconditionError(f"Not a ground first-order term: {t!r}")
        self._known[t] = None
        self.uf.find(t)

    def merge(self, s: Term, t: Term) -> None:
        self.add_term(s)
        self.add_term(t)
        self.uf.union(s, t)

    def close(self) -> int:
        """Merge congruent applications until nothing changes; returns the number of rounds."""
        rounds = 0
        changed = True
        while changed:
            changed = False
            rounds += 1
            signatures: Dict[Tuple[str, Tuple[Term, ...]], Fn] = {}
            for t in self.applications:
                key = (t.symbol, tuple(self.uf.find(a) for a in t.args))
                other = signatures.setdefault(key, t)
                if other is not t and self.uf.union(other, t):
                    changed = True
        return rounds

    def equal(self, s: Term, t: Term) -> bool:
        self.add_term(s)
        self.add_term(t)
        return self.uf.find(s) is self.uf.find(t)


def _atoms(formula: Formula) -> List[Formula]:
    out: Dict[Formula, None] = {}
    stack: List[Node] = [formula]
    while stack:
        n = stack.pop()
        if isinstance(n, (Not, Imp, And, Or)):
            stack.extend(reversed(n.children()))
        elif isinstance(n, (Pred, Eq)):
            out.setdefault(n, None)
        else:
            raise PreconditionError(f"Not a quantifier-free formula: {n!r}")
    return list(out)


def _value(f: Node, assignment: Dict[Formula, bool]) -> Optional[bool]:
    match f:
        case Not(body):
            v = _value(body, assignment)
            return None if v is None else not v
        case Imp(left, right):
            a = _value(left, assignment)
            if a is False:
                return True
            b = _value(right, assignment)
            if b is True:
                return True
            return False if a is True and b is False else None
        case And(left, right):
            a = _value(left, assignment)
            if a is False:
                return False
            b = _value(right, assignment)
            if b is False:
                return False
            return True if a is True and b is True else None
        case Or(left, right):
            a = _value(left, assignment)
            if a is True:
                return True
            b = _value(right, assignment)
            if b is True:
                return True
            return False if a is False and b is False else None
        case _:
            assert isinstance(f, Formula)
            return assignment.get(f)


def consistent(literals: Dict[Formula, bool]) -> bool:
    """Whether the literals have a model of equality with uninterpreted symbols."""
    cc = CongruenceClosure()
    for atom in literals:
        for t in atom.children():
            cc.add_term(t)  # type: ignore[arg-type]
    for atom, value in literals.items():
        if value and isinstance(atom, Eq):
            cc.merge(atom.left, atom.right)
    cc.close()
    for atom, value in literals.items():
        if not value and isinstance(atom, Eq) and cc.equal(atom.left, atom.right):
            return False
    truth: Dict[Tuple[str, Tuple[Term, ...]], bool] = {}
    for atom, value in literals.items():
        if isinstance(atom, Pred):
            key = (atom.symbol, tuple(cc.uf.find(a) for a in atom.args))
            if truth.setdefault(key, value) != value:
                return False
    return True


class CongruenceClosureOracle(HerbrandOracle):
    """Countermodel search over atoms, each candidate checked by congruence closure."""

    def __init__(self, max_nodes: int = 1_000_000):
        self._max_nodes = max_nodes

    def decide(self, formula: Formula) -> OracleResult:
        if formula.has_eps or formula.has_quant:
            raise PreconditionError("The oracle decides ε-free quantifier-free formulas only")
        started = time.perf_counter()
        atom_list = _atoms(formula)
        nodes = 0
        closures = 0
        found: Optional[Dict[Formula, bool]] = None

        def search(depth: int, assignment: Dict[Formula, bool]) -> bool:
            nonlocal nodes, closures, found
            nodes += 1
            if nodes > self._max_nodes:
                raise ResourceLimitError(f"Countermodel search exceeded {self._max_nodes} nodes")
            v = _value(formula, assignment)
            if v is True:
                return False
            closures += 1
            if not consistent(assignment):
                return False
            if v is False:
                found = dict(assignment)
                return True
            atom = atom_list[depth]
            for choice in (False, True):
                assignment[atom] = choice
                if search(depth + 1, assignment):
                    return True
                del assignment[atom]
            return False

        refuted = search(0, {})
        metrics: Dict[str, Union[int, float]] = {
            "atoms": len(atom_list),
            "nodes": nodes,
            "closures": closures,
            "seconds": time.perf_counter() - started,
        }
        if refuted:
            assert found is not None
            countermodel = {format_formula(a): v for a, v in found.items()}
            logger.debug(f"Countermodel over {len(countermodel)} atoms")
            return OracleResult(False, metrics, countermodel)
        return OracleResult(True, metrics)
