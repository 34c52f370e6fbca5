"""Exception types shared across the package.

Index attributes on these exceptions are 0-based, matching the in-memory
convention. Messages and CLI diagnostics use 1-based rows.
"""


class KaczmarzError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(KaczmarzError):
    """Numerical rank fell short during a QR factorisation.

    ``column`` is the 0-based pivot column whose magnitude dropped below the
    rank tolerance.
    """

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"rank deficient at pivot column {column}")


class SingularTriangle(KaczmarzError):
    """Triangular factor has a vanishing diagonal entry (0-based ``index``)."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"triangular diagonal entry {index} is numerically zero")


class Inconsistent(KaczmarzError):
    """A point that should solve the system fails the residual check."""


class InconsistentSuspected(KaczmarzError):
    """Max-residual stalled above rounding noise for a full guard window."""


class MalformedBoundaries(KaczmarzError):
    """Window boundaries must start at 0, increase strictly, and stay in range."""


class ParseError(KaczmarzError):
    """Input file could not be parsed; carries the offending 1-based line."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ZeroRow(KaczmarzError):
    """A system row is identically zero and defines no hyperplane."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"row {row + 1} is all zero and defines no hyperplane")


class DimensionMismatch(KaczmarzError):
    """Shapes of the matrix, right-hand side, or start vector disagree."""
