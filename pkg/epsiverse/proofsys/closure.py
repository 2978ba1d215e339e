"""Closures of ε-matrices under positional ε-equality premises."""

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Iterator, List, Sequence, Set, Tuple

from ..kernel import Eps, EpsMatrix, Term, degree, eps_matrix_of

if TYPE_CHECKING:
    from .checker import CheckResult
    from .measures import CriticalTermInfo


def position_key(t: Term) -> Tuple[int, str]:
    """Per-position order: degree first, canonical text to break ties."""
    return degree(t), t.key


@dataclass
class Closure:
    matrix: EpsMatrix
    positions: Dict[int, List[Term]] = field(default_factory=dict)
    instances: List[Tuple[Term, ...]] = field(default_factory=list)

    @property
    def size(self) -> int:
        """Elements sharing one assignment outside the linked positions."""
        n = 1
        for terms in self.positions.values():
            n *= len(terms)
        return n

    def _frames(self) -> List[Tuple[Term, ...]]:
        frames: Dict[Tuple[Term, ...], None] = {}
        for args in self.instances:
            frames[tuple(a for i, a in enumerate(args) if i not in self.positions)] = None
        return list(frames)

    def elements(self) -> Iterator[Eps]:
        linked = sorted(self.positions)
        for frame in self._frames():
            rest = iter(frame)
            template: List[Term] = []
            for i in range(self.matrix.arity):
                template.append(self.positions[i][0] if i in self.positions else next(rest))
            for combo in itertools.product(*(self.positions[i] for i in linked)):
                args = list(template)
                for i, t in zip(linked, combo):
                    args[i] = t
                yield self.matrix.instantiate(args)

    def __contains__(self, e: object) -> bool:
        if not isinstance(e, Eps) or not e.closed:
            return False
        g, args = eps_matrix_of(e)
        if g != self.matrix:
            return False
        frames = set(self._frames())
        frame = tuple(a for i, a in enumerate(args) if i not in self.positions)
        return frame in frames and all(args[i] in self.positions[i] for i in self.positions)

    def precedes(self, a: Eps, b: Eps) -> bool:
        """Strict product order on argument vectors of the matrix."""
        ga, xs = eps_matrix_of(a)
        gb, ys = eps_matrix_of(b)
        if ga != self.matrix or gb != self.matrix or a is b:
            return False
        for i, (x, y) in enumerate(zip(xs, ys)):
            if i in self.positions:
                if position_key(x) > position_key(y):
                    return False
            elif x is not y:
                return False
        return True

    def same_frame(self, a: Eps, b: Eps) -> bool:
        xs, ys = eps_matrix_of(a)[1], eps_matrix_of(b)[1]
        return all(x is y for i, (x, y) in enumerate(zip(xs, ys)) if i not in self.positions)

    def is_greatest(self, e: Eps, others: Sequence[Eps]) -> bool:
        """Above every other instance sharing its unlinked arguments."""
        return all(o is e or not self.same_frame(o, e) or self.precedes(o, e) for o in others)


def lex_key(e: Eps) -> Tuple[Tuple[int, str], ...]:
    return tuple(position_key(a) for a in eps_matrix_of(e)[1])


def lex_decreased(before: Sequence[Eps], after: Sequence[Eps]) -> bool:
    """Multiset-extension decrease of the lexicographic argument order."""
    old: Set[Eps] = set(before)
    new: Set[Eps] = set(after)
    if old == new:
        return False
    removed = old - new
    return all(any(lex_key(x) < lex_key(y) for y in removed) for x in new - old)


def closures_by_matrix(result: "CheckResult", terms: Dict[Eps, "CriticalTermInfo"]) -> Dict[EpsMatrix, Closure]:
    closures: Dict[EpsMatrix, Closure] = {}
    for e, info in terms.items():
        closure = closures.setdefault(info.matrix, Closure(info.matrix))
        closure.instances.append(eps_matrix_of(e)[1])
    for info in result.lines:
        if info is None or info.kind != "epseq" or info.eps_equality is None:
            continue
        eq = info.eps_equality
        if eq.position is None:
            continue
        g = eps_matrix_of(eq.left)[0]
        column = closures[g].positions.setdefault(eq.position, [])
        for t in (eq.premises[0].left, eq.premises[0].right):
            if t not in column:
                column.append(t)
    for closure in closures.values():
        for column in closure.positions.values():
            column.sort(key=position_key)
    return closures
