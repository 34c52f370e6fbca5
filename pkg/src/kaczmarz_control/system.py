"""Validated dense linear system shared by the solver and analysis modules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroRow


@dataclass(frozen=True)
class LinearSystem:
    """Dense system ``a @ x = b`` with cached squared row norms.

    Every row must be nonzero (a zero row defines no hyperplane) and every
    entry finite. ``frobenius_sq`` is stored as the sum of ``row_sq_norms``
    computed once from the same array, so the two stay exactly consistent.
    Arrays are frozen after construction; instances are safe to share across
    threads.
    """

    a: np.ndarray
    b: np.ndarray
    row_sq_norms: np.ndarray = field(init=False, repr=False)
    frobenius_sq: float = field(init=False)

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float).reshape(-1)
        if a.ndim != 2 or a.size == 0:
            raise DimensionMismatch(f"matrix must be 2-d and non-empty, got shape {a.shape}")
        if b.shape[0] != a.shape[0]:
            raise DimensionMismatch(
                f"matrix has {a.shape[0]} rows but rhs has {b.shape[0]} entries"
            )
        if not np.isfinite(a).all() or not np.isfinite(b).all():
            raise ValueError("system entries must be finite")
        norms = (a * a).sum(axis=1)
        for i, sq in enumerate(norms):
            if sq == 0.0:
                raise ZeroRow(i)
        for arr in (a, b, norms):
            arr.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "row_sq_norms", norms)
        object.__setattr__(self, "frobenius_sq", float(norms.sum()))

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]

    def without_row(self, i: int) -> "LinearSystem":
        """The system with row ``i`` (0-based) deleted."""
        if not 0 <= i < self.m:
            raise IndexError(f"row {i} out of range for {self.m} rows")
        if self.m < 2:
            raise DimensionMismatch("cannot drop a row from a single-row system")
        keep = np.arange(self.m) != i
        return LinearSystem(self.a[keep], self.b[keep])
