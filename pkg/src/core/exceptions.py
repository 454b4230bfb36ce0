"""
Exception Hierarchy
Errors raised by the library layer; the application maps them to exit codes.
"""

from typing import Any, List, Optional


class PseudographError(Exception):
    """Base class for every error raised by pseudograph."""


class FieldError(PseudographError, ValueError):
    """Invalid finite field parameters or mixed-field arithmetic."""


class GraphError(PseudographError, ValueError):
    """Invalid graph input (out-of-range vertex, duplicate edge, ...)."""


class EdgeListFormatError(GraphError):
    """Malformed edge-list file, with the offending position."""

    def __init__(self, message: str, line: int, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{location}: {message}")


class ConstructionError(PseudographError, ValueError):
    """A builder precondition is violated."""


class SpectralError(PseudographError):
    """Base class for eigensolver failures."""


class DenseCapExceeded(SpectralError, ValueError):
    """The graph is above the dense cap; use extremal_lambda instead."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"n = {n} exceeds the dense cap {cap}; use extremal_lambda for large graphs"
        )


class ConvergenceError(SpectralError, RuntimeError):
    """An iterative solver did not converge within its iteration cap."""


class OracleError(PseudographError, ValueError):
    """An oracle was called outside its supported input range."""


class AuditPreconditionError(PseudographError, ValueError):
    """An audit declines because its hypothesis is not met."""


class ExperimentError(PseudographError, ValueError):
    """A Monte Carlo experiment got parameters outside its range."""


class UsageError(PseudographError, ValueError):
    """Bad command line: unknown flags, missing or malformed arguments."""


class ClaimsSchemaError(PseudographError, ValueError):
    """A claims document does not match the schema."""


class SoundnessViolation(PseudographError):
    """An exact value violated an audited inequality beyond tolerance."""

    def __init__(self, message: str, findings: Optional[List[Any]] = None):
        self.findings = findings or []
        super().__init__(message)
