import contextlib
import contextvars
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterator, Optional

from .kernel import Fn, Term, Var


@dataclass
class ResourceLimits:
    max_lines: Optional[int] = 250_000
    max_nodes: Optional[int] = 5_000_000
    # deep right-nested disjunctions come out of elimination
    recursion_limit: int = 50_000


@dataclass
class TautologyConfig:
    max_table_atoms: int = 24
    max_search_steps: int = 2_000_000


ResidualFactory = Callable[[int], Term]


def _residual_variable(index: int) -> Term:
    """Fresh free variable standing for a residual ε-term."""
    return Var(f"_r{index}")


def _residual_constant(index: int) -> Term:
    """Fresh nullary constant standing for a residual ε-term."""
    return Fn(f"_c{index}", ())


RESIDUAL_POLICIES: Dict[str, ResidualFactory] = {
    "variables": _residual_variable,
    "constants": _residual_constant,
}


@dataclass
class EliminationConfig:
    limits: ResourceLimits = field(default_factory=ResourceLimits)
    tautology: TautologyConfig = field(default_factory=TautologyConfig)
    residuals: str = "variables"
    dedup: bool = False
    trace_path: Optional[Path] = None
    workers: int = 1
    max_steps: int = 10_000
    enforce_bounds: bool = True

    @property
    def residual_factory(self) -> ResidualFactory:
        return RESIDUAL_POLICIES[self.residuals]


_limits: contextvars.ContextVar[ResourceLimits] = contextvars.ContextVar("limits", default=ResourceLimits())
_tautology: contextvars.ContextVar[TautologyConfig] = contextvars.ContextVar(
    "tautology", default=TautologyConfig()
)


def current_limits() -> ResourceLimits:
    return _limits.get()


def current_tautology_config() -> TautologyConfig:
    return _tautology.get()


def raise_recursion_limit(limits: ResourceLimits) -> None:
    if sys.getrecursionlimit() < limits.recursion_limit:
        sys.setrecursionlimit(limits.recursion_limit)


@contextlib.contextmanager
def applied(config: EliminationConfig) -> Iterator[EliminationConfig]:
    """Make the config's limits and tautology settings current for the block."""
    raise_recursion_limit(config.limits)
    limits_token = _limits.set(config.limits)
    tautology_token = _tautology.set(config.tautology)
    try:
        yield config
    finally:
        _limits.reset(limits_token)
        _tautology.reset(tautology_token)


def _positive_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got '{raw}'")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def create_config_from_env() -> EliminationConfig:
    """
    Create EliminationConfig from environment variables.

    Optional environment variables:
    - EPSIVERSE_MAX_LINES: cap on the number of lines of any constructed proof
    - EPSIVERSE_MAX_NODES: cap on the size of any single formula
    - EPSIVERSE_TABLE_ATOMS: largest atom count decided by truth tables
    - EPSIVERSE_SEARCH_STEPS: step cap of the satisfiability search
    - EPSIVERSE_RESIDUALS: replacement for residual ε-terms (variables, constants)

    Returns:
        EliminationConfig: Configuration with defaults for unset variables

    Raises:
        ValueError: If a variable is malformed or the residual policy is unsupported
    """
    config = EliminationConfig()

    max_lines = _positive_int("EPSIVERSE_MAX_LINES")
    if max_lines is not None:
        config.limits.max_lines = max_lines

    max_nodes = _positive_int("EPSIVERSE_MAX_NODES")
    if max_nodes is not None:
        config.limits.max_nodes = max_nodes

    table_atoms = _positive_int("EPSIVERSE_TABLE_ATOMS")
    if table_atoms is not None:
        config.tautology.max_table_atoms = table_atoms

    search_steps = _positive_int("EPSIVERSE_SEARCH_STEPS")
    if search_steps is not None:
        config.tautology.max_search_steps = search_steps

    residuals = os.getenv("EPSIVERSE_RESIDUALS")
    if residuals:
        if residuals.lower() not in RESIDUAL_POLICIES:
            supported = ", ".join(RESIDUAL_POLICIES.keys())
            raise ValueError(f"Unsupported residual policy '{residuals}'. Supported policies: {supported}")
        config.residuals = residuals.lower()

    return config
