"""Read linear systems from MatrixMarket and CSV files.

Two layouts are understood:

* MatrixMarket (``array`` or ``coordinate``, real, general), read densely.
  The right-hand side comes from a sibling ``.rhs`` vector file when one
  exists, otherwise the last matrix column is split off as the rhs.
* CSV: a ``m,n`` header line, then m matrix rows, then one final row with
  the m right-hand-side entries.

Vector files (``.rhs``, start points, reference points) are plain text,
whitespace separated, with ``%`` or ``#`` comments.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError
from .system import LinearSystem

MM_HEADER_PREFIX = "%%matrixmarket"


def load_system(path, rhs_in_last_column: bool | None = None) -> LinearSystem:
    """Load and validate a system; raises ParseError, ZeroRow, DimensionMismatch.

    ``rhs_in_last_column`` forces the MatrixMarket rhs convention: True
    always splits the last column, False requires the sibling ``.rhs``
    file, None (default) auto-detects.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(0, f"no such file: {path}")
    if _is_matrix_market(path):
        dense = _parse_matrix_market(path)
        return _attach_rhs(path, dense, rhs_in_last_column)
    a, b = _parse_csv(path)
    return LinearSystem(a, b)


def rhs_source(path, rhs_in_last_column: bool | None = None) -> str:
    """Where the right-hand side comes from: inline, rhs_file, or last_column."""
    path = Path(path)
    if not _is_matrix_market(path):
        return "inline"
    if rhs_in_last_column is True:
        return "last_column"
    if _sibling_rhs(path).exists():
        return "rhs_file"
    return "last_column"


def load_vector(path) -> np.ndarray:
    """Read a plain-text vector file (one or more values per line)."""
    path = Path(path)
    if not path.exists():
        raise ParseError(0, f"no such file: {path}")
    values = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            s = raw.strip()
            if not s or s.startswith(("%", "#")):
                continue
            for tok in s.replace(",", " ").split():
                values.append(_parse_float(tok, lineno))
    if not values:
        raise ParseError(0, f"no values in vector file {path}")
    return np.array(values)


def _is_matrix_market(path: Path) -> bool:
    if path.suffix.lower() in (".mtx", ".mm"):
        return True
    if path.suffix.lower() == ".csv":
        return False
    with open(path) as fh:
        first = fh.readline()
    return first.lower().startswith(MM_HEADER_PREFIX)


def _sibling_rhs(path: Path) -> Path:
    return path.with_suffix(".rhs")


def _attach_rhs(path: Path, dense: np.ndarray, rhs_in_last_column) -> LinearSystem:
    source = rhs_source(path, rhs_in_last_column)
    if source == "rhs_file":
        b = load_vector(_sibling_rhs(path))
        return LinearSystem(dense, b)
    if rhs_in_last_column is False:
        raise ParseError(0, f"no sibling rhs file {_sibling_rhs(path)}")
    if dense.shape[1] < 2:
        raise DimensionMismatch("matrix needs at least 2 columns to carry the rhs in the last one")
    return LinearSystem(dense[:, :-1], dense[:, -1])


def _parse_float(tok: str, lineno: int) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise ParseError(lineno, f"not a number: {tok!r}") from None
    if not np.isfinite(value):
        raise ParseError(lineno, f"non-finite value: {tok!r}")
    return value


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"not an integer: {tok!r}") from None


def _data_lines(lines, start=1):
    for lineno, raw in enumerate(lines[start - 1:], start=start):
        s = raw.strip()
        if not s or s.startswith("%"):
            continue
        yield lineno, s


def _parse_matrix_market(path: Path) -> np.ndarray:
    with open(path) as fh:
        lines = fh.readlines()
    if not lines:
        raise ParseError(1, "empty file")
    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != MM_HEADER_PREFIX or header[1].lower() != "matrix":
        raise ParseError(1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'")
    fmt, field, symmetry = (tok.lower() for tok in header[2:])
    if fmt not in ("array", "coordinate"):
        raise ParseError(1, f"unsupported format {fmt!r} (need array or coordinate)")
    if field not in ("real", "integer"):
        raise ParseError(1, f"unsupported field {field!r} (need real)")
    if symmetry != "general":
        raise ParseError(1, f"unsupported symmetry {symmetry!r} (need general)")

    data = _data_lines(lines, start=2)
    try:
        size_lineno, size_line = next(data)
    except StopIteration:
        raise ParseError(len(lines), "missing size line") from None
    toks = size_line.split()

    if fmt == "array":
        if len(toks) != 2:
            raise ParseError(size_lineno, "array size line must be 'rows cols'")
        rows, cols = (_parse_int(t, size_lineno) for t in toks)
        if rows < 1 or cols < 1:
            raise ParseError(size_lineno, f"bad dimensions {rows} x {cols}")
        values = []
        for lineno, s in data:
            for tok in s.split():
                if len(values) >= rows * cols:
                    raise ParseError(lineno, "more entries than rows * cols")
                values.append(_parse_float(tok, lineno))
        if len(values) != rows * cols:
            raise ParseError(len(lines), f"expected {rows * cols} entries, found {len(values)}")
        # array format stores entries column by column
        return np.array(values).reshape((cols, rows)).T

    if len(toks) != 3:
        raise ParseError(size_lineno, "coordinate size line must be 'rows cols nnz'")
    rows, cols, nnz = (_parse_int(t, size_lineno) for t in toks)
    if rows < 1 or cols < 1 or nnz < 0:
        raise ParseError(size_lineno, f"bad size line {size_line!r}")
    dense = np.zeros((rows, cols))
    seen = set()
    count = 0
    for lineno, s in data:
        toks = s.split()
        if len(toks) != 3:
            raise ParseError(lineno, "coordinate entry must be 'row col value'")
        if count >= nnz:
            raise ParseError(lineno, f"more than {nnz} entries")
        i = _parse_int(toks[0], lineno)
        j = _parse_int(toks[1], lineno)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(lineno, f"entry ({i}, {j}) outside {rows} x {cols}")
        if (i, j) in seen:
            raise ParseError(lineno, f"duplicate entry ({i}, {j})")
        seen.add((i, j))
        dense[i - 1, j - 1] = _parse_float(toks[2], lineno)
        count += 1
    if count != nnz:
        raise ParseError(len(lines), f"expected {nnz} entries, found {count}")
    return dense


def _parse_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        lines = fh.readlines()
    rows = list(_data_lines(lines, start=1))
    if not rows:
        raise ParseError(1, "empty file")
    header_lineno, header = rows[0]
    toks = [t for t in header.replace(",", " ").split()]
    if len(toks) != 2:
        raise ParseError(header_lineno, "header must be 'm,n'")
    m = _parse_int(toks[0], header_lineno)
    n = _parse_int(toks[1], header_lineno)
    if m < 1 or n < 1:
        raise ParseError(header_lineno, f"bad dimensions {m} x {n}")
    body = rows[1:]
    if len(body) < m + 1:
        raise ParseError(len(lines), f"expected {m} matrix rows and a final rhs row")
    if len(body) > m + 1:
        raise ParseError(body[m + 1][0], "unexpected extra line")
    a = np.zeros((m, n))
    for k in range(m):
        lineno, s = body[k]
        vals = [_parse_float(t, lineno) for t in s.replace(",", " ").split()]
        if len(vals) != n:
            raise DimensionMismatch(f"line {lineno}: matrix row has {len(vals)} entries, expected {n}")
        a[k] = vals
    lineno, s = body[m]
    b = [_parse_float(t, lineno) for t in s.replace(",", " ").split()]
    if len(b) != m:
        raise DimensionMismatch(f"line {lineno}: rhs row has {len(b)} entries, expected {m}")
    return a, np.array(b)
