"""Hash-consed syntax of ε-terms and formulas.

Bound variables are de Bruijn indices (``BVar(0)`` is the innermost binder);
free variables are names. Every node is interned, so two nodes are α-equivalent
exactly when they are the same object. Binder names survive only as printing
hints and take no part in identity.
"""

import threading
import weakref
from typing import Any, Callable, FrozenSet, Iterator, Optional, Tuple, TypeVar

_lock = threading.Lock()
_table: "weakref.WeakValueDictionary[Tuple[Any, ...], Node]" = weakref.WeakValueDictionary()

N = TypeVar("N", bound="Node")


def _intern(cls: "type[N]", key: Tuple[Any, ...], setup: Callable[[N], None]) -> N:
    full_key = (cls,) + key
    with _lock:
        node = _table.get(full_key)
        if node is None:
            node = object.__new__(cls)
            setup(node)
            node._finish()
            _table[full_key] = node
    return node  # type: ignore[return-value]


def table_size() -> int:
    """Number of live interned nodes."""
    return len(_table)


class Node:
    __slots__ = (
        "__weakref__",
        "lbv",
        "size",
        "has_eps",
        "has_quant",
        "_fv",
        "_loose",
        "_key",
        "_degree",
        "_rank",
    )

    lbv: int
    size: int
    has_eps: bool
    has_quant: bool

    def children(self) -> Tuple["Node", ...]:
        return ()

    def _finish(self) -> None:
        kids = self.children()
        self.lbv = max((k.lbv for k in kids), default=0)
        self.size = 1 + sum(k.size for k in kids)
        self.has_eps = any(k.has_eps for k in kids)
        self.has_quant = any(k.has_quant for k in kids)
        self._fv: Optional[FrozenSet[str]] = None
        self._loose: Optional[FrozenSet[int]] = None
        self._key: Optional[str] = None
        self._degree: Optional[int] = None
        self._rank: Optional[int] = None

    @property
    def closed(self) -> bool:
        """True when no bound-variable reference dangles."""
        return self.lbv == 0

    @property
    def free_vars(self) -> FrozenSet[str]:
        if self._fv is None:
            acc: FrozenSet[str] = frozenset()
            for k in self.children():
                acc = acc | k.free_vars
            self._fv = acc
        return self._fv

    @property
    def loose(self) -> FrozenSet[int]:
        """Indices of dangling bound-variable references, relative to this node."""
        if self._loose is None:
            acc: FrozenSet[int] = frozenset()
            for k in self.children():
                acc = acc | k.loose
            self._loose = acc
        return self._loose

    @property
    def key(self) -> str:
        """Canonical nameless rendering, used as the total order on nodes."""
        if self._key is None:
            self._key = self._render_key()
        return self._key

    def _render_key(self) -> str:
        raise NotImplementedError

    def subnodes(self) -> Iterator["Node"]:
        """Distinct subnodes, each once, parents before children."""
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            stack.extend(reversed(node.children()))

    def __repr__(self) -> str:
        from .printer import format_node

        return format_node(self)

    def __copy__(self) -> "Node":
        return self

    def __deepcopy__(self, memo: Any) -> "Node":
        return self

    def __reduce__(self) -> Any:
        return (_rebuild, (type(self), self._fields()))

    def _fields(self) -> Tuple[Any, ...]:
        raise NotImplementedError


def _rebuild(cls: Any, fields: Tuple[Any, ...]) -> "Node":
    return cls(*fields)


class Term(Node):
    __slots__ = ()


class Formula(Node):
    __slots__ = ()


class BVar(Term):
    __slots__ = ("index",)
    __match_args__ = ("index",)
    index: int

    def __new__(cls, index: int) -> "BVar":
        if index < 0:
            raise ValueError(f"Bound-variable index must be non-negative, got {index}")

        def setup(node: "BVar") -> None:
            node.index = index

        return _intern(cls, (index,), setup)

    def _finish(self) -> None:
        super()._finish()
        self.lbv = self.index + 1
        self._loose = frozenset((self.index,))

    def _render_key(self) -> str:
        return f"#{self.index}"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.index,)


class Var(Term):
    __slots__ = ("name",)
    __match_args__ = ("name",)
    name: str

    def __new__(cls, name: str) -> "Var":
        def setup(node: "Var") -> None:
            node.name = name

        return _intern(cls, (name,), setup)

    def _finish(self) -> None:
        super()._finish()
        self._fv = frozenset((self.name,))

    def _render_key(self) -> str:
        return f"${self.name}"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.name,)


class Fn(Term):
    __slots__ = ("symbol", "args")
    __match_args__ = ("symbol", "args")
    symbol: str
    args: Tuple[Term, ...]

    def __new__(cls, symbol: str, args: Tuple[Term, ...] = ()) -> "Fn":
        args = tuple(args)
        for a in args:
            if not isinstance(a, Term):
                raise TypeError(f"Argument of {symbol} is not a term: {a!r}")

        def setup(node: "Fn") -> None:
            node.symbol = symbol
            node.args = args

        return _intern(cls, (symbol, args), setup)

    def children(self) -> Tuple[Node, ...]:
        return self.args

    def _render_key(self) -> str:
        return f"{self.symbol}({','.join(a.key for a in self.args)})"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.symbol, self.args)


class Eps(Term):
    __slots__ = ("body", "hint")
    __match_args__ = ("body",)
    body: Formula
    hint: str

    def __new__(cls, body: Formula, hint: str = "x") -> "Eps":
        if not isinstance(body, Formula):
            raise TypeError(f"Body of an ε-term must be a formula: {body!r}")

        def setup(node: "Eps") -> None:
            node.body = body
            node.hint = hint

        return _intern(cls, (body,), setup)

    def children(self) -> Tuple[Node, ...]:
        return (self.body,)

    def _finish(self) -> None:
        super()._finish()
        self.lbv = max(0, self.body.lbv - 1)
        self.has_eps = True

    @property
    def loose(self) -> FrozenSet[int]:
        if self._loose is None:
            self._loose = frozenset(i - 1 for i in self.body.loose if i > 0)
        return self._loose

    def _render_key(self) -> str:
        return f"e[{self.body.key}]"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.body, self.hint)


class Pred(Formula):
    __slots__ = ("symbol", "args")
    __match_args__ = ("symbol", "args")
    symbol: str
    args: Tuple[Term, ...]

    def __new__(cls, symbol: str, args: Tuple[Term, ...] = ()) -> "Pred":
        args = tuple(args)
        for a in args:
            if not isinstance(a, Term):
                raise TypeError(f"Argument of {symbol} is not a term: {a!r}")

        def setup(node: "Pred") -> None:
            node.symbol = symbol
            node.args = args

        return _intern(cls, (symbol, args), setup)

    def children(self) -> Tuple[Node, ...]:
        return self.args

    def _render_key(self) -> str:
        return f"{self.symbol}<{','.join(a.key for a in self.args)}>"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.symbol, self.args)


class Eq(Formula):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    left: Term
    right: Term

    def __new__(cls, left: Term, right: Term) -> "Eq":
        if not isinstance(left, Term) or not isinstance(right, Term):
            raise TypeError("Both sides of an equation must be terms")

        def setup(node: "Eq") -> None:
            node.left = left
            node.right = right

        return _intern(cls, (left, right), setup)

    def children(self) -> Tuple[Node, ...]:
        return (self.left, self.right)

    def _render_key(self) -> str:
        return f"({self.left.key}={self.right.key})"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.left, self.right)


class Not(Formula):
    __slots__ = ("body",)
    __match_args__ = ("body",)
    body: Formula

    def __new__(cls, body: Formula) -> "Not":
        if not isinstance(body, Formula):
            raise TypeError(f"Negation of a non-formula: {body!r}")

        def setup(node: "Not") -> None:
            node.body = body

        return _intern(cls, (body,), setup)

    def children(self) -> Tuple[Node, ...]:
        return (self.body,)

    def _render_key(self) -> str:
        return f"~{self.body.key}"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.body,)


class Connective(Formula):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    left: Formula
    right: Formula
    glyph = "?"

    def __new__(cls, left: Formula, right: Formula) -> Any:
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError(f"Operands of {cls.__name__} must be formulas")

        def setup(node: "Connective") -> None:
            node.left = left
            node.right = right

        return _intern(cls, (left, right), setup)

    def children(self) -> Tuple[Node, ...]:
        return (self.left, self.right)

    def _render_key(self) -> str:
        return f"({self.left.key}{self.glyph}{self.right.key})"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.left, self.right)


class Imp(Connective):
    __slots__ = ()
    glyph = ">"


class And(Connective):
    __slots__ = ()
    glyph = "&"


class Or(Connective):
    __slots__ = ()
    glyph = "|"


class Quantifier(Formula):
    __slots__ = ("body", "hint")
    __match_args__ = ("body",)
    body: Formula
    hint: str
    glyph = "?"

    def __new__(cls, body: Formula, hint: str = "x") -> Any:
        if not isinstance(body, Formula):
            raise TypeError(f"Body of {cls.__name__} must be a formula")

        def setup(node: "Quantifier") -> None:
            node.body = body
            node.hint = hint

        return _intern(cls, (body,), setup)

    def children(self) -> Tuple[Node, ...]:
        return (self.body,)

    def _finish(self) -> None:
        super()._finish()
        self.lbv = max(0, self.body.lbv - 1)
        self.has_quant = True

    @property
    def loose(self) -> FrozenSet[int]:
        if self._loose is None:
            self._loose = frozenset(i - 1 for i in self.body.loose if i > 0)
        return self._loose

    def _render_key(self) -> str:
        return f"{self.glyph}[{self.body.key}]"

    def _fields(self) -> Tuple[Any, ...]:
        return (self.body, self.hint)


class Forall(Quantifier):
    __slots__ = ()
    glyph = "A"


class Exists(Quantifier):
    __slots__ = ()
    glyph = "E"


Binder = (Eps, Forall, Exists)


def const(symbol: str) -> Fn:
    return Fn(symbol, ())


def fn(symbol: str, *args: Term) -> Fn:
    return Fn(symbol, args)


def pred(symbol: str, *args: Term) -> Pred:
    return Pred(symbol, args)


def rebuild(node: Node, kids: Tuple[Node, ...]) -> Node:
    """Same constructor as ``node``, new children (binder hints preserved)."""
    match node:
        case Fn(symbol, _):
            return Fn(symbol, kids)  # type: ignore[arg-type]
        case Pred(symbol, _):
            return Pred(symbol, kids)  # type: ignore[arg-type]
        case Eq():
            return Eq(kids[0], kids[1])  # type: ignore[arg-type]
        case Not():
            return Not(kids[0])  # type: ignore[arg-type]
        case Connective():
            return type(node)(kids[0], kids[1])  # type: ignore[arg-type]
        case Eps():
            return Eps(kids[0], node.hint)  # type: ignore[arg-type]
        case Quantifier():
            return type(node)(kids[0], node.hint)  # type: ignore[arg-type]
        case _:
            return node
