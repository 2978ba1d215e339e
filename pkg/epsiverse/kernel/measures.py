from typing import Dict, Iterator, List, Tuple

from ..errors import PreconditionError
from .syntax import Eps, Node, Quantifier, Term


def degree(node: Node) -> int:
    """Nesting depth of ε-subterms, counted regardless of binding."""
    if node._degree is None:
        inner = max((degree(c) for c in node.children()), default=0)
        node._degree = inner + 1 if isinstance(node, Eps) else inner
    return node._degree


def subordinating(e: Eps) -> List[Term]:
    """Subsemiterms of the body of ``e`` that mention its bound variable."""
    out: List[Term] = []
    seen: Dict[Tuple[int, int], bool] = {}

    def go(n: Node, d: int) -> None:
        if d not in n.loose:
            return
        k = (id(n), d)
        if k in seen:
            return
        seen[k] = True
        if isinstance(n, Term):
            out.append(n)
        nd = d + 1 if isinstance(n, (Eps, Quantifier)) else d
        for c in n.children():
            go(c, nd)

    go(e.body, 0)
    return out


def rank(t: Node) -> int:
    if t._rank is None:
        if isinstance(t, Eps):
            # closed arguments of a subordinating term do not count
            t._rank = 1 + max((rank(u) for u in subordinating(t) if isinstance(u, Eps)), default=0)
        elif isinstance(t, Term):
            t._rank = max((rank(c) for c in t.children()), default=0)
        else:
            t._rank = max_rank(t)
    return t._rank


def max_rank(node: Node) -> int:
    """Largest rank of an ε-subterm occurring anywhere in ``node``."""
    if not node.has_eps:
        return 0
    return max((rank(n) for n in node.subnodes() if isinstance(n, Eps)), default=0)


def property_degree(e: Node) -> int:
    if not isinstance(e, Eps):
        raise PreconditionError(f"Property degree is defined for ε-terms only, got {e!r}")
    return max((degree(u) for u in subordinating(e)), default=0)


def iter_eps(node: Node) -> Iterator[Eps]:
    for n in node.subnodes():
        if isinstance(n, Eps):
            yield n
