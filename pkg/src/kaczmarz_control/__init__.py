"""Row-projection solver with selectable controls and row-redundancy analysis.

The solver iterates orthogonal projections onto equation hyperplanes under
a cyclic, greedy max-residual, or row-norm weighted random control. The
analysis side decomposes selection sequences into covering windows, counts
index recurrence, and decides per row whether deleting it would move the
minimal-norm solution (a redundant row is one a greedy control can starve).
"""

from .controls import (
    CoveringWindows,
    IndexSequence,
    RecurrenceReport,
    WindowCheck,
    extract_covering_windows,
    recurrence_report,
    verify_windows,
)
from .engine import (
    ControlStrategy,
    Cyclic,
    IterationTrace,
    MaxResidual,
    StopReason,
    WeightedRandom,
    control_rng,
    project_onto_hyperplane,
    row_distribution,
    run_kaczmarz,
    select_max_residual,
    select_random,
)
from .errors import (
    DimensionMismatch,
    Inconsistent,
    InconsistentSuspected,
    KaczmarzError,
    MalformedBoundaries,
    ParseError,
    RankDeficient,
    SingularTriangle,
    ZeroRow,
)
from .leave_one_out import (
    LeaveOneOutReport,
    QrRowCheck,
    RowCheck,
    check_row_qr,
    check_rows_direct,
    cross_validate,
    default_eq_tol,
    leave_one_out_solution,
    make_redundant_rhs,
)
from .linalg import (
    QrFactors,
    block_inverse_transposed,
    min_norm_solution,
    qr_decompose,
    solve_upper_transposed,
)
from .loaders import load_system, load_vector, rhs_source
from .system import LinearSystem

__all__ = [
    "ControlStrategy",
    "CoveringWindows",
    "Cyclic",
    "DimensionMismatch",
    "Inconsistent",
    "InconsistentSuspected",
    "IndexSequence",
    "IterationTrace",
    "KaczmarzError",
    "LeaveOneOutReport",
    "LinearSystem",
    "MalformedBoundaries",
    "MaxResidual",
    "ParseError",
    "QrFactors",
    "QrRowCheck",
    "RankDeficient",
    "RecurrenceReport",
    "RowCheck",
    "SingularTriangle",
    "StopReason",
    "WeightedRandom",
    "WindowCheck",
    "ZeroRow",
    "block_inverse_transposed",
    "check_row_qr",
    "check_rows_direct",
    "control_rng",
    "cross_validate",
    "default_eq_tol",
    "extract_covering_windows",
    "leave_one_out_solution",
    "load_system",
    "load_vector",
    "make_redundant_rhs",
    "min_norm_solution",
    "project_onto_hyperplane",
    "qr_decompose",
    "recurrence_report",
    "rhs_source",
    "row_distribution",
    "run_kaczmarz",
    "select_max_residual",
    "select_random",
    "solve_upper_transposed",
    "verify_windows",
]
