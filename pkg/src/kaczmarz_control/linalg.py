"""Dense QR machinery and minimal-norm solutions.

Householder reflections with the diagonal of the triangular factor
normalised to be strictly positive. The positive diagonal pins the
factorisation down uniquely, which the leave-one-out checks rely on when
comparing factors across row permutations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Inconsistent, RankDeficient, SingularTriangle
from .system import LinearSystem

RANK_TOL = 1e-12
DIAG_TINY = 1e-300
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class QrFactors:
    """Factors of a tall matrix ``t`` (rows >= cols): ``t = q @ [r; 0]``.

    ``q`` is square orthogonal (source_rows x source_rows) and ``r`` is
    square upper triangular (source_cols x source_cols) with r[i, i] > 0.
    Entries below the diagonal of ``r`` are exact zeros.
    """

    q: np.ndarray
    r: np.ndarray
    source_rows: int
    source_cols: int


def qr_decompose(a_transpose) -> QrFactors:
    """Householder QR of a tall full-column-rank matrix.

    Raises RankDeficient(j) when the j-th pivot magnitude falls below
    ``RANK_TOL`` times the largest absolute input entry, i.e. the columns
    are numerically dependent.
    """
    t = np.array(a_transpose, dtype=float)
    if t.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {t.shape}")
    rows, cols = t.shape
    if rows < cols:
        raise ValueError(f"need rows >= cols, got {rows} x {cols}")
    scale = float(np.abs(t).max()) if t.size else 0.0
    if scale == 0.0:
        raise RankDeficient(0, "input is identically zero")
    pivot_tol = RANK_TOL * scale

    work = t.copy()
    q = np.eye(rows)
    for j in range(cols):
        x = work[j:, j]
        norm_x = float(np.sqrt(x @ x))
        if norm_x <= pivot_tol:
            raise RankDeficient(j)
        v = x.copy()
        # reflect onto -sign(x0) * norm_x * e1 to avoid cancellation
        sign = 1.0 if x[0] >= 0.0 else -1.0
        v[0] += sign * norm_x
        beta = 2.0 / float(v @ v)
        work[j:, j:] -= np.outer(beta * v, v @ work[j:, j:])
        q[:, j:] -= np.outer(q[:, j:] @ (beta * v), v)
        work[j, j] = -sign * norm_x
        work[j + 1:, j] = 0.0

    r = np.triu(work[:cols, :cols])
    flip = r.diagonal() < 0.0
    if flip.any():
        r[flip, :] *= -1.0
        q[:, :cols][:, flip] *= -1.0
    return QrFactors(q=q, r=r, source_rows=rows, source_cols=cols)


def solve_upper_transposed(r, rhs) -> np.ndarray:
    """Solve ``r.T @ y = rhs`` for upper-triangular ``r`` (forward substitution)."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(rhs, dtype=float).reshape(-1)
    k = r.shape[0]
    if r.ndim != 2 or r.shape[1] != k:
        raise ValueError(f"triangular factor must be square, got {r.shape}")
    if v.shape[0] != k:
        raise ValueError(f"rhs length {v.shape[0]} does not match factor size {k}")
    y = np.empty(k)
    for i in range(k):
        d = r[i, i]
        if abs(d) < DIAG_TINY:
            raise SingularTriangle(i)
        y[i] = (v[i] - r[:i, i] @ y[:i]) / d
    return y


def block_inverse_transposed(r) -> np.ndarray:
    """Inverse of ``r.T`` assembled block by block.

    Each k x k leading block extends the previous one: the new bottom row
    is -(1/r_kk) * c.T @ X with c the column above the new diagonal entry,
    and the new corner is 1/r_kk.
    """
    r = np.asarray(r, dtype=float)
    k = r.shape[0]
    if r.ndim != 2 or r.shape[1] != k:
        raise ValueError(f"triangular factor must be square, got {r.shape}")
    out = np.zeros((k, k))
    for j in range(k):
        d = r[j, j]
        if abs(d) < DIAG_TINY:
            raise SingularTriangle(j)
        if j:
            out[j, :j] = -(r[:j, j] @ out[:j, :j]) / d
        out[j, j] = 1.0 / d
    return out


def min_norm_solution(system: LinearSystem) -> np.ndarray:
    """Smallest-norm solution of a consistent full-row-rank system with m <= n.

    Computed through the QR of ``a.T``: the unique solution lying in the row
    space of ``a``. Raises RankDeficient when the rows are numerically
    dependent and Inconsistent when the result fails the residual check
    (impossible for full row rank; guards misuse).
    """
    a, b = system.a, system.b
    if system.m > system.n:
        raise RankDeficient(system.n, f"{system.m} rows cannot be independent in {system.n} columns")
    factors = qr_decompose(a.T)
    y = solve_upper_transposed(factors.r, b)
    x = factors.q[:, : system.m] @ y
    residual = float(np.abs(a @ x - b).max())
    scale = max(float(np.abs(b).max()), np.sqrt(system.frobenius_sq) * float(np.linalg.norm(x)), 1e-30)
    if residual > RESIDUAL_TOL * scale:
        raise Inconsistent(f"residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e} * {scale:.3e}")
    return x
