import weakref
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..errors import PreconditionError
from .ops import substitute
from .syntax import Eps, Node, Term, Var, rebuild

PARAMETER_PREFIX = "_a"


@dataclass(frozen=True)
class EpsMatrix:
    """An ε-term whose proper closed subterms are distinct parameters, each once."""

    term: Eps
    parameters: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.parameters)

    def instantiate(self, args: Sequence[Term]) -> Eps:
        if len(args) != self.arity:
            raise PreconditionError(f"Matrix of arity {self.arity} applied to {len(args)} arguments")
        return substitute(self.term, dict(zip(self.parameters, args)))

    def __str__(self) -> str:
        return str(self.term)


_cache: "weakref.WeakKeyDictionary[Eps, Tuple[EpsMatrix, Tuple[Term, ...]]]" = weakref.WeakKeyDictionary()


def eps_matrix_of(e: Node) -> Tuple[EpsMatrix, Tuple[Term, ...]]:
    """Split a closed ε-term into its canonical matrix and argument vector."""
    if not isinstance(e, Eps):
        raise PreconditionError(f"Not an ε-term: {e!r}")
    if not e.closed:
        raise PreconditionError(f"ε-matrix of an open semiterm: {e!r}")
    hit = _cache.get(e)
    if hit is not None:
        return hit

    args: List[Term] = []
    params: List[str] = []

    def go(n: Node) -> Node:
        if isinstance(n, Term) and n.closed:
            name = f"{PARAMETER_PREFIX}{len(params)}"
            params.append(name)
            args.append(n)
            return Var(name)
        kids = n.children()
        if not kids:
            return n
        return rebuild(n, tuple(go(c) for c in kids))

    body = go(e.body)
    result = (EpsMatrix(Eps(body, e.hint), tuple(params)), tuple(args))  # type: ignore[arg-type]
    _cache[e] = result
    return result


def matrix_of(e: Node) -> EpsMatrix:
    return eps_matrix_of(e)[0]


def arguments_of(e: Node) -> Tuple[Term, ...]:
    return eps_matrix_of(e)[1]


def is_matrix(e: Node) -> bool:
    return isinstance(e, Eps) and e.closed and eps_matrix_of(e)[0].term is e
