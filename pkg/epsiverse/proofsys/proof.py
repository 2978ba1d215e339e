from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..config import current_limits
from ..errors import PreconditionError, ResourceLimitError
from ..kernel import Eps, Formula, Imp, Term


@dataclass(frozen=True)
class Tautology:
    pass


@dataclass(frozen=True)
class EqAxiom:
    kind: Optional[str] = None


@dataclass(frozen=True)
class Critical:
    term: Optional[Eps] = None
    witness: Optional[Term] = None


@dataclass(frozen=True)
class EpsEquality:
    position: Optional[int] = None


@dataclass(frozen=True)
class ForallMinus:
    pass


@dataclass(frozen=True)
class ExistsPlus:
    pass


@dataclass(frozen=True)
class ForallPlus:
    premise: int
    eigenvariable: str


@dataclass(frozen=True)
class ExistsMinus:
    premise: int
    eigenvariable: str


@dataclass(frozen=True)
class ModusPonens:
    minor: int
    major: int


@dataclass(frozen=True)
class Axiom:
    index: int


Justification = Union[
    Tautology,
    EqAxiom,
    Critical,
    EpsEquality,
    ForallMinus,
    ExistsPlus,
    ForallPlus,
    ExistsMinus,
    ModusPonens,
    Axiom,
]


def references(j: Justification) -> Tuple[int, ...]:
    """Indices of the earlier lines a justification cites."""
    if isinstance(j, ModusPonens):
        return (j.minor, j.major)
    if isinstance(j, (ForallPlus, ExistsMinus)):
        return (j.premise,)
    return ()


def reindex(j: Justification, mapping: Sequence[int]) -> Justification:
    if isinstance(j, ModusPonens):
        return ModusPonens(mapping[j.minor], mapping[j.major])
    if isinstance(j, (ForallPlus, ExistsMinus)):
        return replace(j, premise=mapping[j.premise])
    return j


@dataclass(frozen=True)
class Line:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    axioms: Tuple[Formula, ...]
    lines: Tuple[Line, ...]

    @property
    def conclusion(self) -> Formula:
        if not self.lines:
            raise PreconditionError("Empty proof has no conclusion")
        return self.lines[-1].formula

    def __len__(self) -> int:
        return len(self.lines)

    def formulas(self) -> List[Formula]:
        return [line.formula for line in self.lines]


class ProofBuilder:
    """Append-only proof under construction; a formula is proved at most once."""

    def __init__(self, axioms: Sequence[Formula] = ()):
        self.axioms: List[Formula] = list(axioms)
        self.lines: List[Line] = []
        self._index: Dict[Formula, int] = {}
        limits = current_limits()
        self._max_lines = limits.max_lines
        self._max_nodes = limits.max_nodes

    def __len__(self) -> int:
        return len(self.lines)

    def formula(self, index: int) -> Formula:
        return self.lines[index].formula

    def find(self, formula: Formula) -> Optional[int]:
        return self._index.get(formula)

    def add(self, formula: Formula, justification: Justification) -> int:
        known = self._index.get(formula)
        if known is not None:
            return known
        if self._max_lines is not None and len(self.lines) >= self._max_lines:
            raise ResourceLimitError(f"Proof exceeds the line cap of {self._max_lines}")
        if self._max_nodes is not None and formula.size > self._max_nodes:
            raise ResourceLimitError(f"Formula of size {formula.size} exceeds the node cap of {self._max_nodes}")
        self.lines.append(Line(formula, justification))
        self._index[formula] = len(self.lines) - 1
        return len(self.lines) - 1

    def axiom(self, formula: Formula) -> int:
        try:
            k = self.axioms.index(formula)
        except ValueError:
            raise PreconditionError(f"{formula!r} is not an axiom of this proof")
        return self.add(formula, Axiom(k))

    def tautology(self, formula: Formula) -> int:
        return self.add(formula, Tautology())

    def mp(self, minor: int, major: int) -> int:
        major_formula = self.formula(major)
        if not isinstance(major_formula, Imp) or major_formula.left is not self.formula(minor):
            raise PreconditionError(f"Modus ponens mismatch: {self.formula(minor)!r} and {major_formula!r}")
        return self.add(major_formula.right, ModusPonens(minor, major))

    def mp_chain(self, minors: Iterable[int], major: int) -> int:
        current = major
        for minor in minors:
            current = self.mp(minor, current)
        return current

    def include(self, proof: Proof) -> List[int]:
        """Copy ``proof`` in, sharing already-proved formulas; returns the new line indices."""
        mapping: List[int] = []
        for line in proof.lines:
            j = line.justification
            if isinstance(j, Axiom):
                mapping.append(self.axiom(proof.axioms[j.index]))
            else:
                mapping.append(self.add(line.formula, reindex(j, mapping)))
        return mapping

    def build(self, conclusion: Optional[Formula] = None) -> Proof:
        lines = list(self.lines)
        if conclusion is not None:
            k = self._index.get(conclusion)
            if k is None:
                raise PreconditionError(f"{conclusion!r} has not been proved")
            if k != len(lines) - 1:
                lines.append(lines[k])
        return Proof(tuple(self.axioms), tuple(lines))


def proof_from(axioms: Sequence[Formula], lines: Sequence[Tuple[Formula, Justification]]) -> Proof:
    return Proof(tuple(axioms), tuple(Line(f, j) for f, j in lines))
