"""Leave-one-out redundancy checks for system rows.

A row is *redundant* when deleting it leaves the minimal-norm solution
unchanged, and *essential* otherwise. Redundant rows matter for the solver:
a greedy or weighted-random control can starve a redundant row forever,
because projections onto the remaining hyperplanes already drive its
residual to zero. When every row is essential, both controls keep coming
back to every row.

Two independent routes decide the question per row:

* direct: compare the minimal-norm solution of the full system with the
  minimal-norm solution of the system without the row;
* triangular: permute the row last, factor the transpose as q @ [r; 0]
  with a positive diagonal, and test the scalar identity
  ``c.T @ inv(lead.T) @ b_rest == b_i`` where ``lead`` is the leading
  (m-1) x (m-1) block of ``r`` and ``c`` the final column above the
  diagonal. The identity holds exactly when the row is redundant.

Both routes are exact statements in exact arithmetic; in floating point a
threshold ``eq_tol`` decides, and verdicts within a factor of 10 of the
threshold are flagged borderline rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RankDeficient
from .linalg import min_norm_solution, qr_decompose, solve_upper_transposed
from .system import LinearSystem

EQ_TOL_SCALE = 1e-8
BORDERLINE_BAND = 10.0
CONSISTENCY_TOL = 1e-10


@dataclass(frozen=True)
class RowCheck:
    """Verdict for one row; fields are None when a path was not computed.

    ``distance`` is the gap between the full and leave-one-out minimal-norm
    solutions. ``qr_residual`` is the scalar-identity defect from the
    triangular route. ``agree`` compares the two verdicts when both exist,
    and is reported even when False. A None ``essential_direct`` together
    with a None distance marks the row as undecidable here (the reduced
    system was inconsistent).
    """

    row: int
    distance: float | None
    essential_direct: bool | None
    qr_residual: float | None
    essential_qr: bool | None
    agree: bool | None
    borderline: bool


@dataclass(frozen=True)
class QrRowCheck:
    """Scalar-identity defect and verdict from the triangular route."""

    residual: float
    threshold: float
    essential: bool
    borderline: bool


@dataclass(frozen=True)
class LeaveOneOutReport:
    rows: tuple[RowCheck, ...]
    eq_tol: float | None
    system_rank_ok: bool

    @property
    def all_essential(self) -> bool | None:
        """True when removal of any single row moves the minimal-norm solution.

        None when any row is undecidable.
        """
        verdicts = [r.essential_direct for r in self.rows]
        if any(v is None for v in verdicts):
            return None
        return all(verdicts)


def default_eq_tol(x_ls) -> float:
    """Equality threshold scaled to the solution size: 1e-8 * (1 + ||x_ls||)."""
    return EQ_TOL_SCALE * (1.0 + float(np.linalg.norm(x_ls)))


def leave_one_out_solution(system: LinearSystem, i: int) -> np.ndarray:
    """Minimal-norm solution of the system with row ``i`` deleted."""
    return min_norm_solution(system.without_row(i))


def check_row_qr(system: LinearSystem, i: int, eq_tol: float | None = None) -> QrRowCheck:
    """Triangular-route verdict for row ``i``.

    The row is permuted to the last position (the relative order of the
    other rows is irrelevant to the outcome), the transpose is factored,
    and the scalar identity residual ``|c.T @ inv(lead.T) @ b_rest - b_i|``
    is compared against ``eq_tol * (1 + |b_i|)``. Essential means the
    identity fails, i.e. the residual clears the threshold.
    """
    m = system.m
    if m < 2:
        raise DimensionMismatch("need at least two rows to drop one")
    if not 0 <= i < m:
        raise IndexError(f"row {i} out of range for {m} rows")
    if eq_tol is None:
        eq_tol = default_eq_tol(min_norm_solution(system))

    order = [j for j in range(m) if j != i] + [i]
    factors = qr_decompose(system.a[order].T)
    lead = factors.r[: m - 1, : m - 1]
    c = factors.r[: m - 1, m - 1]
    y = solve_upper_transposed(lead, system.b[order[: m - 1]])
    residual = abs(float(c @ y) - float(system.b[i]))
    threshold = eq_tol * (1.0 + abs(float(system.b[i])))
    return QrRowCheck(
        residual=residual,
        threshold=threshold,
        essential=residual > threshold,
        borderline=_borderline(residual, threshold),
    )


def check_rows_direct(system: LinearSystem, eq_tol: float | None = None) -> LeaveOneOutReport:
    """Direct-route report for every row (no triangular fields).

    Requires at least two rows. On full-row-rank systems with m <= n the
    leave-one-out solutions come from the QR route; otherwise each row is
    decided through a least-squares fallback and marked undecidable when
    the relevant system is inconsistent.
    """
    return _build_report(system, eq_tol, with_qr=False)


def cross_validate(system: LinearSystem, eq_tol: float | None = None) -> LeaveOneOutReport:
    """Run both routes for every row and record whether the verdicts agree."""
    return _build_report(system, eq_tol, with_qr=True)


def make_redundant_rhs(a, b_leading) -> np.ndarray:
    """Right-hand side that makes the last row's equation redundant.

    Given a full-row-rank matrix ``a`` (m <= n) and the first m-1 entries of
    the right-hand side, the final entry is constructed so that deleting the
    last row does not move the minimal-norm solution. Useful as a worst-case
    fixture: a control may then never select the last row.
    """
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    b_leading = np.asarray(b_leading, dtype=float).reshape(-1)
    if b_leading.shape[0] != m - 1:
        raise DimensionMismatch(f"need {m - 1} leading rhs entries, got {b_leading.shape[0]}")
    factors = qr_decompose(a.T)
    lead = factors.r[: m - 1, : m - 1]
    c = factors.r[: m - 1, m - 1]
    y = solve_upper_transposed(lead, b_leading)
    return np.concatenate([b_leading, [float(c @ y)]])


def _borderline(metric: float, threshold: float) -> bool:
    return threshold / BORDERLINE_BAND <= metric <= threshold * BORDERLINE_BAND


def _lstsq_if_consistent(a, b):
    """Minimal-norm least-squares point when it actually solves the system."""
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ x - b).max())
    scale = max(float(np.abs(b).max()), float(np.abs(a).max()) * float(np.linalg.norm(x)), 1e-30)
    return x if residual <= CONSISTENCY_TOL * scale else None


def _build_report(system: LinearSystem, eq_tol, with_qr):
    m = system.m
    if m < 2:
        raise DimensionMismatch("need at least two rows to drop one")

    rank_ok = True
    x_ls = None
    if system.m > system.n:
        rank_ok = False
    else:
        try:
            x_ls = min_norm_solution(system)
        except RankDeficient:
            rank_ok = False

    if not rank_ok:
        x_ls = _lstsq_if_consistent(system.a, system.b)
        if x_ls is None:
            rows = tuple(
                RowCheck(i, None, None, None, None, None, False) for i in range(m)
            )
            return LeaveOneOutReport(rows=rows, eq_tol=eq_tol, system_rank_ok=False)

    if eq_tol is None:
        eq_tol = default_eq_tol(x_ls)

    checks = []
    for i in range(m):
        if rank_ok:
            xi = leave_one_out_solution(system, i)
        else:
            reduced = system.without_row(i)
            xi = _lstsq_if_consistent(reduced.a, reduced.b)
            if xi is None:
                checks.append(RowCheck(i, None, None, None, None, None, False))
                continue
        distance = float(np.linalg.norm(x_ls - xi))
        essential = distance > eq_tol
        borderline = _borderline(distance, eq_tol)
        if with_qr and rank_ok:
            qr = check_row_qr(system, i, eq_tol)
            checks.append(
                RowCheck(
                    row=i,
                    distance=distance,
                    essential_direct=essential,
                    qr_residual=qr.residual,
                    essential_qr=qr.essential,
                    agree=essential == qr.essential,
                    borderline=borderline or qr.borderline,
                )
            )
        else:
            checks.append(RowCheck(i, distance, essential, None, None, None, borderline))
    return LeaveOneOutReport(rows=tuple(checks), eq_tol=eq_tol, system_rank_ok=rank_ok)
