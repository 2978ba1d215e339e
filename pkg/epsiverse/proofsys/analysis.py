from dataclasses import dataclass
from typing import Dict, List

from ..errors import PreconditionError
from ..kernel import Eps, EpsMatrix
from .checker import CheckResult, verify
from .closure import Closure, closures_by_matrix
from .measures import CriticalTermInfo, MeasureReport, collect_terms
from .proof import Proof
from .system import EqualityMode, System


@dataclass
class ProofAnalysis:
    """A verified proof together with its critical ε-terms and measures."""

    result: CheckResult
    terms: Dict[Eps, CriticalTermInfo]

    @property
    def proof(self) -> Proof:
        return self.result.proof

    @property
    def report(self) -> MeasureReport:
        assert self.result.report is not None
        return self.result.report

    def at_rank(self, r: int) -> List[CriticalTermInfo]:
        return [info for info in self.terms.values() if info.rank == r]

    def of_matrix(self, g: EpsMatrix) -> List[CriticalTermInfo]:
        return [info for info in self.terms.values() if info.matrix == g]


def analyze(system: System, proof: Proof) -> ProofAnalysis:
    result = verify(system, proof)
    return ProofAnalysis(result, collect_terms(result))


def closure_of(proof: Proof, g: EpsMatrix, system: System) -> Closure:
    if system.eps_equality is not EqualityMode.POSITIONAL:
        raise PreconditionError(f"Closures are defined for positional ε-equality, not {system.name}")
    analysis = analyze(system, proof)
    closures = closures_by_matrix(analysis.result, analysis.terms)
    if g not in closures:
        raise PreconditionError(f"{g} is not the matrix of a critical ε-term of the proof")
    return closures[g]
