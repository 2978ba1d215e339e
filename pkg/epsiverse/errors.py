from dataclasses import dataclass
from typing import List, Optional


class EpsiverseError(Exception):
    """Base class for all errors raised by epsiverse."""


class ParseError(EpsiverseError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + location)
        self.line = line
        self.column = column


class ArityError(EpsiverseError, ValueError):
    pass


class SubstitutionError(EpsiverseError, ValueError):
    pass


@dataclass
class Diagnostic:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


class ProofCheckError(EpsiverseError):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = diagnostics
        summary = "; ".join(str(d) for d in diagnostics[:5])
        if len(diagnostics) > 5:
            summary += f"; ... ({len(diagnostics) - 5} more)"
        super().__init__(f"Proof rejected: {summary}")


class PreconditionError(EpsiverseError, ValueError):
    pass


class ResourceLimitError(EpsiverseError):
    pass


class BoundViolation(EpsiverseError):
    pass


class RegistryError(EpsiverseError):
    pass
