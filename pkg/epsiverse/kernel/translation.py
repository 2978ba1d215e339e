from typing import Dict

from .ops import abstract, open_binder, substitute
from .syntax import Eps, Exists, Forall, Formula, Node, Not, rebuild


def eps_translate(formula: Formula) -> Formula:
    """Compile quantifiers away: ∃x A ↦ A(ε_x A), ∀x A ↦ A(ε_x ¬A)."""
    cache: Dict[int, Node] = {}

    def go(n: Node) -> Node:
        if not n.has_quant:
            return n
        hit = cache.get(id(n))
        if hit is not None:
            return hit
        if isinstance(n, (Exists, Forall, Eps)):
            body, v = open_binder(n)
            inner = go(body)
            assert isinstance(inner, Formula)
            if isinstance(n, Eps):
                res: Node = Eps(abstract(inner, v.name), n.hint)
            else:
                witness_body = inner if isinstance(n, Exists) else Not(inner)
                witness = Eps(abstract(witness_body, v.name), n.hint)
                res = substitute(inner, {v.name: witness})
        else:
            res = rebuild(n, tuple(go(c) for c in n.children()))
        cache[id(n)] = res
        return res

    out = go(formula)
    assert isinstance(out, Formula)
    return out
