"""Row-projection iteration with pluggable row-selection controls.

Each step orthogonally projects the iterate onto the hyperplane of one
selected equation. Which equation gets selected is the whole game: the
greedy control picks the row with the largest absolute residual, the
weighted-random control samples rows proportionally to their squared norms,
and the cyclic control sweeps rows in order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InconsistentSuspected
from .system import LinearSystem

GUARD_SHRINK = 0.999
GUARD_WINDOW_PER_ROW = 50
# Stagnation at rounding-noise level is convergence, not inconsistency.
GUARD_NOISE_EPS = 1e3 * np.finfo(float).eps


@dataclass(frozen=True)
class Cyclic:
    """Sweep rows 0, 1, ..., m-1, 0, 1, ... in order."""


@dataclass(frozen=True)
class MaxResidual:
    """Select the row whose equation is currently violated the most."""


@dataclass(frozen=True)
class WeightedRandom:
    """Sample row i with probability ||a_i||^2 / ||a||_F^2, reproducibly.

    The seed feeds a counter-based 64-bit generator, so identical runs give
    bit-identical traces.
    """

    seed: int


ControlStrategy = Cyclic | MaxResidual | WeightedRandom


class StopReason(enum.Enum):
    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class IterationTrace:
    """Per-step record of one solver run.

    ``selected_indices`` and ``residual_max_abs`` are parallel arrays of
    length ``iterations_run``; the residual entry is the max absolute
    residual measured before the step was taken. ``distance_to_reference``
    is present only when a reference point was supplied. ``nonzero_start``
    flags runs that did not start at the origin, where the limit need not
    be the minimal-norm solution.
    """

    selected_indices: np.ndarray
    residual_max_abs: np.ndarray
    distance_to_reference: np.ndarray | None
    final_iterate: np.ndarray
    iterations_run: int
    stop_reason: StopReason
    nonzero_start: bool


def project_onto_hyperplane(x, system: LinearSystem, i: int) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the solution set of equation ``i``."""
    row = system.a[i]
    offset = (float(row @ x) - system.b[i]) / system.row_sq_norms[i]
    return x - offset * row


def select_max_residual(x, system: LinearSystem) -> int:
    """Row with the largest absolute residual at ``x``; ties go to the lowest index."""
    return _argmax_abs(system.a @ x - system.b)


def _argmax_abs(residuals) -> int:
    return int(np.argmax(np.abs(residuals)))


def row_distribution(system: LinearSystem) -> np.ndarray:
    """Probability weights proportional to squared row norms; sums to 1."""
    return system.row_sq_norms / system.frobenius_sq


def select_random(p, rng: np.random.Generator) -> int:
    """Draw an index distributed as ``p`` by inverting the cumulative sums.

    Advances ``rng`` by exactly one uniform draw. Zero-probability entries
    are never selected.
    """
    p = np.asarray(p, dtype=float)
    if (p < 0.0).any() or abs(float(p.sum()) - 1.0) > 1e-9:
        raise ValueError("p is not a probability distribution")
    cdf = np.cumsum(p)
    u = rng.random()
    return min(int(np.searchsorted(cdf, u, side="right")), p.shape[0] - 1)


def control_rng(seed: int) -> np.random.Generator:
    """Generator backing the weighted-random control (counter-based, 64-bit)."""
    return np.random.Generator(np.random.Philox(seed))


def run_kaczmarz(
    system: LinearSystem,
    strategy: ControlStrategy,
    x0=None,
    max_iters: int = 100_000,
    residual_tol: float = 1e-10,
    reference=None,
) -> IterationTrace:
    """Iterate hyperplane projections until the max residual drops to tolerance.

    Starting from ``x0`` (origin when omitted), each step projects onto the
    hyperplane the control selects. Stops once
    ``max_i |<a_i, x> - b_i| <= residual_tol`` or after ``max_iters``
    projections. When ``reference`` is given, the distance to it is recorded
    alongside each step.

    Raises InconsistentSuspected when the best max-residual seen fails to
    improve by a factor of 0.999 across 50 * m consecutive steps while still
    sitting above rounding noise, which on a consistent system should not
    happen for reasonably conditioned rows.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if residual_tol < 0.0:
        raise ValueError("residual_tol must be nonnegative")
    m, n = system.m, system.n
    if x0 is None:
        x = np.zeros(n)
    else:
        x = np.array(x0, dtype=float).reshape(-1)
        if x.shape[0] != n:
            raise DimensionMismatch(f"x0 has length {x.shape[0]}, expected {n}")
    if reference is not None:
        reference = np.asarray(reference, dtype=float).reshape(-1)
        if reference.shape[0] != n:
            raise DimensionMismatch(f"reference has length {reference.shape[0]}, expected {n}")
    nonzero_start = bool(np.any(x != 0.0))

    if isinstance(strategy, WeightedRandom):
        rng = control_rng(strategy.seed)
        weights = row_distribution(system)
    elif not isinstance(strategy, (Cyclic, MaxResidual)):
        raise TypeError(f"unknown control strategy: {strategy!r}")

    selected: list[int] = []
    residuals: list[float] = []
    distances: list[float] = []
    window = GUARD_WINDOW_PER_ROW * m
    best = np.inf
    last_improvement = 0
    fro = float(np.sqrt(system.frobenius_sq))
    b_scale = float(np.abs(system.b).max())

    k = 0
    while True:
        r = system.a @ x - system.b
        max_res = float(np.abs(r).max())
        if max_res <= residual_tol:
            reason = StopReason.CONVERGED
            break
        if k >= max_iters:
            reason = StopReason.BUDGET_EXHAUSTED
            break

        if max_res < GUARD_SHRINK * best:
            last_improvement = k
        best = min(best, max_res)
        if k - last_improvement > window:
            noise = GUARD_NOISE_EPS * (b_scale + fro * (1.0 + float(np.linalg.norm(x))))
            if max_res > noise:
                raise InconsistentSuspected(
                    f"max residual {max_res:.3e} has not improved by {GUARD_SHRINK}"
                    f" over {window} steps; the system may be inconsistent"
                )
            last_improvement = k

        if isinstance(strategy, Cyclic):
            i = k % m
        elif isinstance(strategy, MaxResidual):
            i = _argmax_abs(r)
        else:
            i = select_random(weights, rng)

        selected.append(i)
        residuals.append(max_res)
        if reference is not None:
            distances.append(float(np.linalg.norm(x - reference)))
        x = project_onto_hyperplane(x, system, i)
        k += 1

    return IterationTrace(
        selected_indices=np.array(selected, dtype=np.int64),
        residual_max_abs=np.array(residuals, dtype=float),
        distance_to_reference=np.array(distances, dtype=float) if reference is not None else None,
        final_iterate=x,
        iterations_run=len(selected),
        stop_reason=reason,
        nonzero_start=nonzero_start,
    )
