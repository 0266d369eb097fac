"""Matrix interchange formats: MacKay alist and a plain dense format.

alist layout (1-based indices, zero-padded to the max degree):
    line 1: N M            (columns, rows)
    line 2: max_dv max_dc  (max column degree, max row degree)
    line 3: N column degrees
    line 4: M row degrees
    next N lines: row indices of the ones in each column
    next M lines: column indices of the ones in each row

Dense layout: first line "rows cols", then one line per row of
space-separated 0/1 characters.
"""
from __future__ import annotations

import numpy as np

from . import f2


def write_alist(m, path) -> None:
    """Write a 0/1 matrix to an alist file.

    Args:
        m: Matrix of shape (M, N); stored column-major first per the format.
        path: Destination file path.
    """
    m = f2.as_f2(m)
    rows, cols = m.shape
    col_idx = [list(np.nonzero(m[:, j])[0] + 1) for j in range(cols)]
    row_idx = [list(np.nonzero(m[i, :])[0] + 1) for i in range(rows)]
    max_dv = max((len(c) for c in col_idx), default=0)
    max_dc = max((len(r) for r in row_idx), default=0)
    lines = [
        f"{cols} {rows}",
        f"{max_dv} {max_dc}",
        " ".join(str(len(c)) for c in col_idx),
        " ".join(str(len(r)) for r in row_idx),
    ]
    for c in col_idx:
        lines.append(" ".join(str(i) for i in c + [0] * (max_dv - len(c))))
    for r in row_idx:
        lines.append(" ".join(str(i) for i in r + [0] * (max_dc - len(r))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> np.ndarray:
    """Read an alist file back into a dense uint8 matrix.

    Tolerates the common zero-padding variants: entries are consumed as a
    flat token stream, padded positions hold 0.

    Raises:
        ValueError: on truncated files or out-of-range indices.
    """
    with open(path) as fh:
        tokens = [int(t) for t in fh.read().split()]
    it = iter(tokens)

    def take(k):
        out = []
        for _ in range(k):
            try:
                out.append(next(it))
            except StopIteration:
                raise ValueError(f"truncated alist file: {path}") from None
        return out

    cols, rows = take(2)
    max_dv, max_dc = take(2)
    col_deg = take(cols)
    row_deg = take(rows)
    m = f2.zeros(rows, cols)
    for j in range(cols):
        entries = take(max_dv)
        for r in entries[: col_deg[j]]:
            if not 1 <= r <= rows:
                raise ValueError(f"column {j}: row index {r} out of range")
            m[r - 1, j] = 1
    for i in range(rows):
        entries = take(max_dc)
        for c in entries[: row_deg[i]]:
            if not 1 <= c <= cols:
                raise ValueError(f"row {i}: column index {c} out of range")
            if not m[i, c - 1]:
                raise ValueError(f"row {i}: entry ({i},{c - 1}) missing from column lists")
    return m


def write_dense(m, path) -> None:
    """Write a matrix in the plain dense format."""
    m = f2.as_f2(m)
    with open(path, "w") as fh:
        fh.write(f"{m.shape[0]} {m.shape[1]}\n")
        for row in m:
            fh.write(" ".join(str(int(b)) for b in row) + "\n")


def read_dense(path) -> np.ndarray:
    """Read a matrix written by write_dense."""
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"truncated dense matrix file: {path}")
    rows, cols = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(body)}")
    flat = np.array([int(t) for t in body], dtype=np.uint8)
    return f2.as_f2(flat.reshape(rows, cols))
