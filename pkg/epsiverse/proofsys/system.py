from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Optional

from ..kernel import Eq, Formula


class EqualityMode(Enum):
    NONE = "none"
    MATRIX = "matrix"
    POSITIONAL = "positional"
    UNRESTRICTED = "unrestricted"


@dataclass(frozen=True)
class System:
    name: str
    quantifiers: bool
    epsilon: bool
    equality: bool
    eps_equality: EqualityMode = EqualityMode.NONE

    def with_mode(self, mode: EqualityMode) -> "System":
        for system in SYSTEMS.values():
            if (system.quantifiers, system.epsilon, system.equality, system.eps_equality) == (
                self.quantifiers,
                self.epsilon,
                self.equality or mode is not EqualityMode.NONE,
                mode,
            ):
                return system
        raise KeyError(f"No system like {self.name} with ε-equality mode {mode.value}")

    def elementary(self) -> "System":
        """The ε-free, quantifier-free system with the same equality support."""
        return EC_EQ if self.equality else EC

    def language_violation(self, formula: Formula) -> Optional[str]:
        if formula.has_quant and not self.quantifiers:
            return f"quantifiers are not in the language of {self.name}"
        if formula.has_eps and not self.epsilon:
            return f"ε-terms are not in the language of {self.name}"
        if not self.equality and _has_equality(formula):
            return f"equality is not in the language of {self.name}"
        return None


@lru_cache(maxsize=None)
def _has_equality(formula: Formula) -> bool:
    return any(isinstance(n, Eq) for n in formula.subnodes())


_N, _M, _P, _U = EqualityMode.NONE, EqualityMode.MATRIX, EqualityMode.POSITIONAL, EqualityMode.UNRESTRICTED

SYSTEMS: Dict[str, System] = {
    s.name: s
    for s in [
        System("ec", False, False, False, _N),
        System("pc", True, False, False, _N),
        System("ec-eq", False, False, True, _N),
        System("pc-eq", True, False, True, _N),
        System("ec-eps", False, True, False, _N),
        System("pc-eps", True, True, False, _N),
        System("ec-eps+eq", False, True, True, _N),
        System("pc-eps+eq", True, True, True, _N),
        System("ec-eps-eq", False, True, True, _M),
        System("pc-eps-eq", True, True, True, _M),
        System("ec-eps-eq1", False, True, True, _P),
        System("pc-eps-eq1", True, True, True, _P),
        System("ec-eps-eq-u", False, True, True, _U),
        System("pc-eps-eq-u", True, True, True, _U),
    ]
}

EC = SYSTEMS["ec"]
EC_EQ = SYSTEMS["ec-eq"]
PC = SYSTEMS["pc"]
PC_EQ = SYSTEMS["pc-eq"]
EC_EPS = SYSTEMS["ec-eps"]
EC_EPS_PLUS_EQ = SYSTEMS["ec-eps+eq"]
EC_EPS_EQ = SYSTEMS["ec-eps-eq"]
EC_EPS_EQ1 = SYSTEMS["ec-eps-eq1"]
EC_EPS_EQ_U = SYSTEMS["ec-eps-eq-u"]


def system_by_name(name: str) -> System:
    try:
        return SYSTEMS[name.lower()]
    except KeyError:
        supported = ", ".join(SYSTEMS.keys())
        raise ValueError(f"Unsupported system '{name}'. Supported systems: {supported}")
