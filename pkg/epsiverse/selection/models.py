from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from ..kernel import Eps
from ..proofsys import ProofAnalysis


@dataclass
class SelectionContext:
    step: int
    analysis: ProofAnalysis
    rank: Optional[int] = None


@dataclass
class SelectionResult:
    term: Eps
    rationale: str
    greatest_in_matrix: Optional[bool] = None
    tags: Dict[str, Union[int, str]] = field(default_factory=dict)


class SelectionStrategy(ABC):
    name: str = "selection"

    @abstractmethod
    def apply(self, context: SelectionContext) -> SelectionResult:
        pass

    @abstractmethod
    def result(self, step: int, cc: Optional[int]) -> None:
        pass

    @abstractmethod
    def serialize(self) -> Dict[str, Any]:
        pass

    @abstractmethod
    def deserialize(self, state: Dict[str, Any]) -> None:
        pass
