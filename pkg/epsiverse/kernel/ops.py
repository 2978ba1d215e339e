import itertools
import threading
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, TypeVar, Union, cast

from ..errors import SubstitutionError
from .syntax import (
    And,
    BVar,
    Eps,
    Exists,
    Forall,
    Formula,
    Imp,
    Node,
    Not,
    Or,
    Quantifier,
    Term,
    Var,
    rebuild,
)

N = TypeVar("N", bound=Node)


class FreshNames:
    """Monotone supply of reserved names (``_v0``, ``_v1``, ...)."""

    def __init__(self) -> None:
        self._counter = itertools.count()
        self._lock = threading.Lock()

    def reset(self) -> None:
        with self._lock:
            self._counter = itertools.count()

    def fresh(self, prefix: str = "_v", avoid: Iterable[str] = ()) -> str:
        taken = set(avoid)
        with self._lock:
            while True:
                name = f"{prefix}{next(self._counter)}"
                if name not in taken:
                    return name


fresh_names = FreshNames()


def fresh_var(prefix: str = "_v", avoid: Iterable[str] = ()) -> Var:
    return Var(fresh_names.fresh(prefix, avoid))


def _binder_body_map(node: Node, fn: Callable[[Node, int], Node], depth: int) -> Node:
    if isinstance(node, (Eps, Quantifier)):
        return rebuild(node, (fn(node.body, depth + 1),))
    return rebuild(node, tuple(fn(c, depth) for c in node.children()))


def instantiate(body: N, term: Term, depth: int = 0) -> N:
    """Replace references to binder ``depth`` in ``body`` by the closed ``term``."""
    if not term.closed:
        raise SubstitutionError(f"Cannot instantiate a binder with an open semiterm {term!r}")
    cache: Dict[Tuple[int, int], Node] = {}

    def go(node: Node, d: int) -> Node:
        if node.lbv <= d:
            return node
        if isinstance(node, BVar):
            return term if node.index == d else node
        k = (id(node), d)
        hit = cache.get(k)
        if hit is None:
            hit = _binder_body_map(node, go, d)
            cache[k] = hit
        return hit

    return cast(N, go(body, depth))


def abstract(node: N, name: str, depth: int = 0) -> N:
    """Turn free occurrences of ``name`` into references to binder ``depth``."""
    cache: Dict[Tuple[int, int], Node] = {}

    def go(n: Node, d: int) -> Node:
        if name not in n.free_vars:
            return n
        if isinstance(n, Var):
            return BVar(d)
        k = (id(n), d)
        hit = cache.get(k)
        if hit is None:
            hit = _binder_body_map(n, go, d)
            cache[k] = hit
        return hit

    return cast(N, go(node, depth))


def open_binder(binder: Union[Eps, Quantifier], name: Optional[str] = None) -> Tuple[Formula, Var]:
    """Body of ``binder`` with its variable replaced by a fresh (or given) free variable."""
    v = Var(name) if name is not None else fresh_var("_x", binder.free_vars)
    return instantiate(binder.body, v), v


def bind_eps(name: str, body: Formula) -> Eps:
    return Eps(abstract(body, name), name)


def bind_forall(name: str, body: Formula) -> Forall:
    return Forall(abstract(body, name), name)


def bind_exists(name: str, body: Formula) -> Exists:
    return Exists(abstract(body, name), name)


def substitute(node: N, mapping: Mapping[str, Term]) -> N:
    """Simultaneous variable-for-term substitution. Replacement terms must be closed."""
    if not mapping:
        return node
    for name, t in mapping.items():
        if not t.closed:
            raise SubstitutionError(f"Substituting open semiterm {t!r} for {name}")
    names = frozenset(mapping)
    cache: Dict[int, Node] = {}

    def go(n: Node) -> Node:
        if names.isdisjoint(n.free_vars):
            return n
        if isinstance(n, Var):
            return mapping[n.name]
        hit = cache.get(id(n))
        if hit is None:
            hit = rebuild(n, tuple(go(c) for c in n.children()))
            cache[id(n)] = hit
        return hit

    return cast(N, go(node))


def replace(node: N, mapping: Mapping[Node, Node]) -> N:
    """Simultaneous term-for-term replacement, outermost occurrences first."""
    if not mapping:
        return node
    smallest = min(k.size for k in mapping)
    cache: Dict[int, Node] = {}

    def go(n: Node) -> Node:
        if n.size < smallest:
            return n
        target = mapping.get(n)
        if target is not None:
            return target
        hit = cache.get(id(n))
        if hit is None:
            hit = rebuild(n, tuple(go(c) for c in n.children()))
            cache[id(n)] = hit
        return hit

    return cast(N, go(node))


def occurs(sub: Node, node: Node) -> bool:
    if sub.size > node.size:
        return False
    for n in node.subnodes():
        if n is sub:
            return True
    return False


def closed_terms(node: Node) -> Iterator[Term]:
    for n in node.subnodes():
        if isinstance(n, Term) and n.closed:
            yield n


def eps_terms(node: Node) -> Iterator[Eps]:
    """Closed ε-subterms of ``node``, each once."""
    for n in node.subnodes():
        if isinstance(n, Eps) and n.closed:
            yield n


def maximal_eps_terms(node: Node) -> List[Eps]:
    """Closed ε-subterms not lying inside another closed ε-subterm, left to right."""
    out: List[Eps] = []
    seen: Set[int] = set()

    def go(n: Node) -> None:
        if not n.has_eps:
            return
        if isinstance(n, Eps) and n.closed:
            if id(n) not in seen:
                seen.add(id(n))
                out.append(n)
            return
        for c in n.children():
            go(c)

    go(node)
    return out


class _Vacuous:
    def __repr__(self) -> str:
        return "VACUOUS"


VACUOUS = _Vacuous()


def match_instance(body: Formula, target: Formula) -> Union[Term, _Vacuous, None]:
    """Find ``t`` with ``instantiate(body, t) is target``.

    Returns ``VACUOUS`` when ``body`` never mentions its binder and equals ``target``.
    """
    found: List[Term] = []

    def go(p: Node, t: Node, d: int) -> bool:
        if p.lbv <= d:
            return p is t
        if isinstance(p, BVar):
            if p.index != d:
                return p is t
            if not isinstance(t, Term) or not t.closed:
                return False
            if found:
                return found[0] is t
            found.append(t)
            return True
        if type(p) is not type(t):
            return False
        if not _same_head(p, t):
            return False
        nd = d + 1 if isinstance(p, (Eps, Quantifier)) else d
        return all(go(a, b, nd) for a, b in zip(p.children(), t.children()))

    if not go(body, target, 0):
        return None
    return found[0] if found else VACUOUS


def _same_head(a: Node, b: Node) -> bool:
    sa = getattr(a, "symbol", None)
    if sa is not None and sa != getattr(b, "symbol", None):
        return False
    return len(a.children()) == len(b.children())


def match(pattern: Node, target: Node, holes: Iterable[str]) -> Optional[Dict[str, Term]]:
    """First-order matching; only the free variables named in ``holes`` may be bound."""
    hole_set = frozenset(holes)
    binding: Dict[str, Term] = {}

    def go(p: Node, t: Node) -> bool:
        if hole_set.isdisjoint(p.free_vars):
            return p is t
        if isinstance(p, Var):
            if not isinstance(t, Term) or not t.closed:
                return False
            prev = binding.get(p.name)
            if prev is None:
                binding[p.name] = t
                return True
            return prev is t
        if type(p) is not type(t) or not _same_head(p, t):
            return False
        return all(go(a, b) for a, b in zip(p.children(), t.children()))

    return dict(binding) if go(pattern, target) else None


def conjunction(parts: Sequence[Formula]) -> Optional[Formula]:
    """Right-nested conjunction; ``None`` for the empty conjunction."""
    if not parts:
        return None
    acc = parts[-1]
    for f in reversed(parts[:-1]):
        acc = And(f, acc)
    return acc


def disjunction(parts: Sequence[Formula]) -> Optional[Formula]:
    if not parts:
        return None
    acc = parts[-1]
    for f in reversed(parts[:-1]):
        acc = Or(f, acc)
    return acc


def implies(premises: Sequence[Formula], goal: Formula) -> Formula:
    """``P1 -> (P2 -> ... -> goal)``."""
    acc = goal
    for p in reversed(premises):
        acc = Imp(p, acc)
    return acc


def conjuncts(f: Formula, count: Optional[int] = None) -> List[Formula]:
    """Split a right-nested conjunction, into ``count`` parts when given."""
    out: List[Formula] = []
    while isinstance(f, And) and (count is None or len(out) < count - 1):
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def disjuncts(f: Formula, count: Optional[int] = None) -> List[Formula]:
    out: List[Formula] = []
    while isinstance(f, Or) and (count is None or len(out) < count - 1):
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def negate(f: Formula) -> Formula:
    return Not(f)


def strip_premises(f: Formula, count: int) -> Optional[Tuple[List[Formula], Formula]]:
    """Peel ``count`` antecedents off a right-nested implication."""
    premises: List[Formula] = []
    for _ in range(count):
        if not isinstance(f, Imp):
            return None
        premises.append(f.left)
        f = f.right
    return premises, f
