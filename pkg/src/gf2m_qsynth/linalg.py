"""Dense bit-matrix helpers over GF(2) (numpy ``uint8`` arrays of 0/1)."""

from __future__ import annotations

import numpy as np


def gf2_rank(m: np.ndarray) -> int:
    a = np.array(m, dtype=np.uint8) & 1
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        pivots = np.nonzero(a[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        hits = np.nonzero(a[:, col])[0]
        hits = hits[hits != rank]
        a[hits] ^= a[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_det(m: np.ndarray) -> int:
    """Determinant over GF(2): 1 iff the square matrix is invertible."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    return int(gf2_rank(m) == n)


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def elimination_ops(m: np.ndarray) -> list[tuple[int, int]]:
    """Row additions ``(src, dst)`` (``row[dst] ^= row[src]``) reducing ``m`` to I.

    Raises ``ValueError`` for a singular matrix.
    """
    a = np.array(m, dtype=np.uint8) & 1
    n = a.shape[0]
    ops: list[tuple[int, int]] = []
    for col in range(n):
        if not a[col, col]:
            below = np.nonzero(a[col + 1:, col])[0]
            if below.size == 0:
                raise ValueError("matrix is singular over GF(2)")
            src = col + 1 + int(below[0])
            a[col] ^= a[src]
            ops.append((src, col))
        for row in np.nonzero(a[:, col])[0]:
            if row != col:
                a[row] ^= a[col]
                ops.append((col, int(row)))
    return ops
