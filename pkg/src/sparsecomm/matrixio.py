"""Plain-text matrix files: header ``m n complex_flag``, then one row per line.

Complex matrices store ``re im`` pairs, real ones store bare values, all at
17 significant digits so a write/read round trip is bit exact.
"""

from __future__ import annotations

import numpy as np

from ._validation import as_matrix

__all__ = ["save_matrix", "load_matrix"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save_matrix(H, path) -> None:
    H = as_matrix(H, "H")
    m, n = H.shape
    is_complex = bool(np.any(H.imag != 0.0))
    lines = [f"{m} {n} {int(is_complex)}"]
    for row in H:
        if is_complex:
            parts = []
            for v in row:
                parts.append(_fmt(v.real))
                parts.append(_fmt(v.imag))
        else:
            parts = [_fmt(v.real) for v in row]
        lines.append(" ".join(parts))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.readline().split()
        if len(tokens) != 3:
            raise ValueError(f"{path}: malformed header, expected 'm n complex_flag'")
        m, n, flag = (int(t) for t in tokens)
        H = np.empty((m, n), dtype=np.complex128)
        for i in range(m):
            vals = fh.readline().split()
            expected = 2 * n if flag else n
            if len(vals) != expected:
                raise ValueError(f"{path}: row {i} has {len(vals)} values, expected {expected}")
            row = np.array([float(v) for v in vals])
            H[i, :] = row[0::2] + 1j * row[1::2] if flag else row
    return H
