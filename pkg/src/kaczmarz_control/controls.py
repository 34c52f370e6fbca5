"""Coverage analysis of row-selection sequences.

A selection sequence is a good control when it can be chopped into
consecutive windows that each contain every row index. The extraction here
is greedy: each window ends at the earliest position that completes
coverage, so every boundary is minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedBoundaries


@dataclass(frozen=True)
class IndexSequence:
    """Finite sequence of row indices over the alphabet {0, ..., m-1}."""

    values: tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("alphabet size m must be at least 1")
        values = tuple(int(v) for v in self.values)
        for t, v in enumerate(values):
            if not 0 <= v < self.m:
                raise ValueError(f"value {v} at position {t} outside [0, {self.m})")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CoveringWindows:
    """Greedy decomposition of a sequence into minimal covering windows.

    ``boundaries`` is the strictly increasing list of window edges starting
    at 0; window k spans positions [boundaries[k], boundaries[k+1]).
    ``covered_prefix_len`` equals the last boundary. ``tail_missing`` lists
    the indices the unfinished tail still lacks (empty when the sequence is
    partitioned exactly).
    """

    boundaries: tuple[int, ...]
    covered_prefix_len: int
    tail_missing: frozenset[int]

    @property
    def complete_windows(self) -> int:
        return len(self.boundaries) - 1


@dataclass(frozen=True)
class WindowCheck:
    """Outcome of verifying proposed window boundaries against a sequence."""

    ok: bool
    failed_window: int | None
    missing: frozenset[int]


@dataclass(frozen=True)
class RecurrenceReport:
    """Occurrence counts per index on a finite sequence prefix.

    ``last_seen[i]`` is the last position where index i occurs, or None.
    An empty ``missing`` set is a finite-prefix surrogate for "every index
    keeps recurring"; it never proves the asymptotic property.
    """

    counts: tuple[int, ...]
    last_seen: tuple[int | None, ...]
    missing: frozenset[int]


def extract_covering_windows(seq: IndexSequence) -> CoveringWindows:
    """Greedy minimal covering windows of ``seq``, single pass."""
    hit = np.zeros(seq.m, dtype=bool)
    need = seq.m
    boundaries = [0]
    for t, v in enumerate(seq.values):
        if not hit[v]:
            hit[v] = True
            need -= 1
            if need == 0:
                boundaries.append(t + 1)
                hit[:] = False
                need = seq.m
    covered = boundaries[-1]
    if covered == len(seq.values):
        tail_missing = frozenset()
    else:
        tail_missing = frozenset(i for i in range(seq.m) if not hit[i])
    return CoveringWindows(
        boundaries=tuple(boundaries),
        covered_prefix_len=covered,
        tail_missing=tail_missing,
    )


def verify_windows(seq: IndexSequence, boundaries) -> WindowCheck:
    """Check that every window [b_k, b_{k+1}) contains all indices.

    Reports the first failing window and what it misses. Raises
    MalformedBoundaries when the boundaries do not start at 0, are not
    strictly increasing, or run past the sequence end.
    """
    bounds = [int(t) for t in boundaries]
    if not bounds or bounds[0] != 0:
        raise MalformedBoundaries("boundaries must start at 0")
    for a, b in zip(bounds, bounds[1:]):
        if b <= a:
            raise MalformedBoundaries(f"boundaries not strictly increasing at {a} -> {b}")
    if bounds[-1] > len(seq.values):
        raise MalformedBoundaries(f"boundary {bounds[-1]} past sequence end {len(seq.values)}")

    full = frozenset(range(seq.m))
    for k, (a, b) in enumerate(zip(bounds, bounds[1:])):
        missing = full - set(seq.values[a:b])
        if missing:
            return WindowCheck(ok=False, failed_window=k, missing=frozenset(missing))
    return WindowCheck(ok=True, failed_window=None, missing=frozenset())


def recurrence_report(seq: IndexSequence) -> RecurrenceReport:
    """Exact occurrence counts and last positions for each index."""
    counts = [0] * seq.m
    last: list[int | None] = [None] * seq.m
    for t, v in enumerate(seq.values):
        counts[v] += 1
        last[v] = t
    missing = frozenset(i for i in range(seq.m) if counts[i] == 0)
    return RecurrenceReport(counts=tuple(counts), last_seen=tuple(last), missing=missing)
