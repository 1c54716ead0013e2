"""
Error types raised across hopfdesk.

Validation operations return reports (lists of strings); the exceptions below are
raised when an input cannot even be interpreted, or when two independent
computations of the same quantity disagree.
"""


class HopfDeskError(Exception):
    """Base class for all hopfdesk errors."""


class DimensionMismatch(HopfDeskError, ValueError):
    """Matrix or tensor shapes do not fit together."""


class StructureError(HopfDeskError, ValueError):
    """An algebraic structure is malformed (bad group table, singular antipode, ...)."""


class InconsistentComplex(HopfDeskError):
    """A complex has a nonzero composite of differentials, or boundaries outside cycles."""


class ComputationMismatch(HopfDeskError):
    """Two independent computations of the same quantity disagree."""


class DocumentError(HopfDeskError, ValueError):
    """A task document is malformed or refers to unknown names."""

    def __init__(self, message: str, line: int = None, column: int = None) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
