from typing import List

from .parser import is_variable_name
from .syntax import And, BVar, Connective, Eps, Eq, Forall, Fn, Imp, Node, Not, Or, Pred, Quantifier, Var

# formula contexts
_F_TOP, _F_DISJ, _F_CONJ, _F_UNARY = 0, 1, 2, 3
# term contexts
_T_ARG, _T_SUM, _T_APP, _T_PRIMARY = -1, 0, 1, 2


def format_node(node: Node) -> str:
    printer = _Printer()
    if isinstance(node, (Pred, Eq, Not, Connective, Quantifier)):
        return printer.formula(node, _F_TOP)
    return printer.term(node, _T_ARG)


def format_formula(node: Node) -> str:
    return _Printer().formula(node, _F_TOP)


def format_term(node: Node) -> str:
    return _Printer().term(node, _T_ARG)


class _Printer:
    def __init__(self) -> None:
        self._names: List[str] = []

    def _pick(self, hint: str, node: Node) -> str:
        base = hint if is_variable_name(hint) and hint not in ("eps", "forall", "exists") else "x"
        taken = set(self._names) | node.free_vars
        name, i = base, 1
        while name in taken:
            name = f"{base}{i}"
            i += 1
        return name

    def _bound(self, node: Node, hint: str, keyword: str) -> str:
        assert isinstance(node, (Eps, Quantifier))
        name = self._pick(hint, node)
        self._names.append(name)
        try:
            body = self.formula(node.body, _F_TOP)
        finally:
            self._names.pop()
        return f"{keyword} {name}. {body}"

    def formula(self, f: Node, ctx: int) -> str:
        match f:
            case Quantifier():
                keyword = "forall" if isinstance(f, Forall) else "exists"
                text = self._bound(f, f.hint, keyword)
                return text if ctx == _F_TOP else f"({text})"
            case Imp(left, right):
                text = f"{self.formula(left, _F_DISJ)} -> {self.formula(right, _F_TOP)}"
                return text if ctx == _F_TOP else f"({text})"
            case Or(left, right):
                text = f"{self.formula(left, _F_CONJ)} | {self.formula(right, _F_DISJ)}"
                return text if ctx <= _F_DISJ else f"({text})"
            case And(left, right):
                text = f"{self.formula(left, _F_UNARY)} & {self.formula(right, _F_CONJ)}"
                return text if ctx <= _F_CONJ else f"({text})"
            case Not(body):
                return f"~{self.formula(body, _F_UNARY)}"
            case Eq(left, right):
                return f"{self.term(left, _T_SUM)} = {self.term(right, _T_SUM)}"
            case Pred(symbol, args):
                if not args:
                    return symbol
                return f"{symbol}({', '.join(self.term(a, _T_ARG) for a in args)})"
            case _:
                return f"<{type(f).__name__}>"

    def term(self, t: Node, ctx: int) -> str:
        match t:
            case BVar(index):
                if index < len(self._names):
                    return self._names[-1 - index]
                return f"#{index}"
            case Var(name):
                return name
            case Eps():
                text = self._bound(t, t.hint, "eps")
                return text if ctx == _T_ARG else f"({text})"
            case Fn("+", (left, right)):
                text = f"{self.term(left, _T_APP)} + {self.term(right, _T_SUM)}"
                return text if ctx <= _T_SUM else f"({text})"
            case Fn("@", (left, right)):
                text = f"{self.term(left, _T_APP)} @ {self.term(right, _T_PRIMARY)}"
                return text if ctx <= _T_APP else f"({text})"
            case Fn(symbol, args):
                if not args and not is_variable_name(symbol):
                    return symbol
                return f"{symbol}({', '.join(self.term(a, _T_ARG) for a in args)})"
            case _:
                return f"<{type(t).__name__}>"
