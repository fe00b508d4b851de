"""Matrix Market and plain-CSV readers/writers.

Matrix Market support covers the ``matrix`` object in ``coordinate`` and
``array`` formats with ``real`` or ``integer`` fields and ``general``
symmetry; array data is column-major per the exchange-format definition.
CSV files are headerless, comma-separated, one matrix row per line with
``.`` as the decimal mark; vectors are one value per line.  All floats are
written with 17 significant digits, so write/read round-trips are exact.

Parse errors report the offending line number.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .matrix import DesignMatrix
from .trace import ConvergenceTrace

__all__ = [
    "load_matrix",
    "save_matrix",
    "load_vector",
    "save_vector",
    "save_trace_csv",
    "load_trace_csv",
]

_FMT = "%.17g"


def _fail(path, lineno, message):
    raise ValueError(f"{path}:{lineno}: {message}")


def _parse_floats(path, lineno, fields):
    try:
        return [float(f) for f in fields]
    except ValueError:
        _fail(path, lineno, f"could not parse number in {fields!r}")


# ---------------------------------------------------------------------------
# Matrix Market


def _load_matrix_market(path, lines):
    header = lines[0][1].split()
    if len(header) < 5 or header[0] != "%%MatrixMarket" or header[1].lower() != "matrix":
        _fail(path, lines[0][0], "malformed MatrixMarket header")
    layout, field, symmetry = (tok.lower() for tok in header[2:5])
    if layout not in ("coordinate", "array"):
        _fail(path, lines[0][0], f"unsupported layout {layout!r}")
    if field not in ("real", "integer"):
        _fail(path, lines[0][0], f"unsupported field {field!r} (real or integer only)")
    if symmetry != "general":
        _fail(path, lines[0][0], f"unsupported symmetry {symmetry!r} (general only)")

    body = [(no, ln) for no, ln in lines[1:] if not ln.startswith("%")]
    if not body:
        _fail(path, lines[-1][0], "missing size line")
    size_no, size_line = body[0]
    sizes = size_line.split()

    if layout == "coordinate":
        if len(sizes) != 3:
            _fail(path, size_no, "coordinate size line must be 'rows cols nnz'")
        n, d, nnz = (int(tok) for tok in sizes)
        entries = body[1:]
        if len(entries) != nnz:
            _fail(path, size_no, f"expected {nnz} entries, found {len(entries)}")
        rows = np.empty(nnz, dtype=np.int64)
        cols = np.empty(nnz, dtype=np.int64)
        vals = np.empty(nnz, dtype=np.float64)
        for idx, (no, ln) in enumerate(entries):
            fields = ln.split()
            if len(fields) != 3:
                _fail(path, no, "coordinate entry must be 'row col value'")
            try:
                i, j = int(fields[0]), int(fields[1])
            except ValueError:
                _fail(path, no, f"bad indices in {ln!r}")
            v = _parse_floats(path, no, fields[2:])[0]
            if not (1 <= i <= n and 1 <= j <= d):
                _fail(path, no, f"index ({i}, {j}) outside {n}x{d}")
            rows[idx], cols[idx], vals[idx] = i - 1, j - 1, v
        csr = sp.coo_matrix((vals, (rows, cols)), shape=(n, d)).tocsr()
        csr.sum_duplicates()
        csr.sort_indices()
        return DesignMatrix.from_csr(n, d, csr.indptr, csr.indices, csr.data)

    if len(sizes) != 2:
        _fail(path, size_no, "array size line must be 'rows cols'")
    n, d = (int(tok) for tok in sizes)
    values = []
    for no, ln in body[1:]:
        values.extend(_parse_floats(path, no, ln.split()))
    if len(values) != n * d:
        _fail(path, body[-1][0] if len(body) > 1 else size_no,
              f"expected {n * d} values, found {len(values)}")
    dense = np.array(values, dtype=np.float64).reshape((d, n)).T  # column-major
    return DesignMatrix.from_dense(dense)


def _save_matrix_market(A: DesignMatrix, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        if A.storage == "dense":
            fh.write("%%MatrixMarket matrix array real general\n")
            fh.write(f"{A.n_rows} {A.n_cols}\n")
            dense = A.toarray()
            for j in range(A.n_cols):
                for i in range(A.n_rows):
                    fh.write(_FMT % dense[i, j] + "\n")
        else:
            indptr, indices, data = A.csr_parts()
            fh.write("%%MatrixMarket matrix coordinate real general\n")
            fh.write(f"{A.n_rows} {A.n_cols} {len(data)}\n")
            for i in range(A.n_rows):
                for k in range(indptr[i], indptr[i + 1]):
                    fh.write(f"{i + 1} {indices[k] + 1} " + _FMT % data[k] + "\n")


# ---------------------------------------------------------------------------
# CSV


def _numbered_lines(path):
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read().splitlines()
    lines = [(no, ln.strip()) for no, ln in enumerate(raw, start=1)]
    return [(no, ln) for no, ln in lines if ln]


def load_matrix(path) -> DesignMatrix:
    """Read a DesignMatrix from Matrix Market or headerless CSV.

    The format is detected from the first line: a ``%%MatrixMarket`` banner
    selects the exchange format, anything else is parsed as CSV.
    """
    lines = _numbered_lines(path)
    if not lines:
        raise ValueError(f"{path}:1: empty file")
    if lines[0][1].startswith("%%MatrixMarket"):
        return _load_matrix_market(path, lines)
    rows = []
    width = None
    for no, ln in lines:
        fields = ln.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            _fail(path, no, f"expected {width} columns, found {len(fields)}")
        rows.append(_parse_floats(path, no, fields))
    return DesignMatrix.from_dense(np.array(rows, dtype=np.float64))


def save_matrix(A: DesignMatrix, path):
    """Write a DesignMatrix: ``.mtx`` paths as Matrix Market, else CSV."""
    if str(path).endswith(".mtx"):
        _save_matrix_market(A, path)
        return
    dense = A.toarray()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for row in dense:
            fh.write(",".join(_FMT % v for v in row) + "\n")


def load_vector(path) -> np.ndarray:
    """Read a vector from CSV: one value per line, or a single CSV line."""
    lines = _numbered_lines(path)
    if not lines:
        raise ValueError(f"{path}:1: empty file")
    if len(lines) == 1 and "," in lines[0][1]:
        return np.array(_parse_floats(path, lines[0][0], lines[0][1].split(",")))
    values = []
    for no, ln in lines:
        fields = ln.split(",")
        if len(fields) != 1:
            _fail(path, no, "vector file must have one value per line")
        values.append(_parse_floats(path, no, fields)[0])
    return np.array(values, dtype=np.float64)


def save_vector(x, path):
    """Write a vector as CSV, one value per line."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a vector, got shape {x.shape}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for v in x:
            fh.write(_FMT % v + "\n")


def save_trace_csv(trace: ConvergenceTrace, path):
    """Write a convergence trace with the ``iteration,rel_error`` header."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("iteration,rel_error\n")
        for it, err in trace.records:
            fh.write(f"{it}," + _FMT % err + "\n")


def load_trace_csv(path, algorithm: str = "projection", metadata=None) -> ConvergenceTrace:
    """Read a convergence trace written by :func:`save_trace_csv`."""
    lines = _numbered_lines(path)
    if not lines or lines[0][1] != "iteration,rel_error":
        raise ValueError(f"{path}:1: missing 'iteration,rel_error' header")
    records = []
    for no, ln in lines[1:]:
        fields = ln.split(",")
        if len(fields) != 2:
            _fail(path, no, "expected 'iteration,rel_error'")
        try:
            it = int(fields[0])
        except ValueError:
            _fail(path, no, f"bad iteration index {fields[0]!r}")
        records.append((it, _parse_floats(path, no, fields[1:])[0]))
    return ConvergenceTrace(records=records, algorithm=algorithm,
                            metadata=dict(metadata or {}))
