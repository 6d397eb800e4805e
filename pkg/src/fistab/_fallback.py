"""Pure numpy row reduction, used when the compiled kernel is unavailable."""

from __future__ import annotations

import numpy as np


def rref_modp(m: np.ndarray, p: int, reduced: bool = True) -> list[int]:
    """Row-reduce the int64 array ``m`` in place modulo ``p``.

    Same contract as the compiled kernel: entries in ``[0, p)`` on entry,
    returns the list of pivot columns.
    """
    rows, cols = m.shape
    pivots: list[int] = []
    row = 0
    for c in range(cols):
        if row >= rows:
            break
        nz = np.flatnonzero(m[row:, c])
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            m[[row, r], c:] = m[[r, row], c:]
        inv = pow(int(m[row, c]), p - 2, p)
        m[row, c:] = (m[row, c:] * inv) % p
        col = m[:, c].copy()
        col[row] = 0
        if not reduced:
            col[:row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit, c:] = (m[hit, c:] - np.outer(col[hit], m[row, c:])) % p
        pivots.append(c)
        row += 1
    return pivots


def rref_generic(m: np.ndarray, reduced: bool = True) -> list[int]:
    """Row-reduce an object array of exact field elements (e.g. Fractions)."""
    rows, cols = m.shape
    pivots: list[int] = []
    row = 0
    for c in range(cols):
        if row >= rows:
            break
        r = next((i for i in range(row, rows) if m[i, c] != 0), None)
        if r is None:
            continue
        if r != row:
            m[[row, r], :] = m[[r, row], :]
        inv = 1 / m[row, c]
        m[row, c:] = m[row, c:] * inv
        start = 0 if reduced else row + 1
        for i in range(start, rows):
            if i != row and m[i, c] != 0:
                m[i, c:] = m[i, c:] - m[i, c] * m[row, c:]
        pivots.append(c)
        row += 1
    return pivots
