"""Exception hierarchy shared by every module."""
from __future__ import annotations



class QBildError(Exception):
    """Base class for all package errors."""


class NotUnit(QBildError, ValueError):
    """A vector that must lie on the unit sphere does not."""


class NotHermitian(QBildError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotComplex(QBildError, ValueError):
    """A quaternionic matrix has nonzero j or k components."""


class EmptyRegion(QBildError, ValueError):
    """An operation needs a nonempty convex region."""


class Infeasible(QBildError):
    """The real-band constraint set is provably empty."""


class RetriesExhausted(QBildError):
    """The feasible-point sampler gave up after its retry budget."""


class ParseError(QBildError):
    """A matrix or result file could not be parsed.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ConfigError(QBildError, ValueError):
    """Invalid run configuration (for example a sweep grid below 8)."""
