"""Pure-Python determinant kernels (arbitrary-precision fallback).

Same contract as the compiled ``_detcore`` extension: exact integer
determinants of 0/1 matrices via fraction-free (Bareiss) elimination.
Python ints make every dimension up to 256 exact without overflow
concerns, at roughly two orders of magnitude less throughput.
"""

from __future__ import annotations


def det01(rows) -> int:
    """Exact determinant of a square 0/1 matrix given as nested sequences."""
    n = len(rows)
    m = [[int(v) for v in row] for row in rows]
    return _bareiss(m, n)


def det01_window(matrix, offset: int, size: int) -> int:
    """Determinant of the ``size`` columns starting at ``offset``.

    ``matrix`` is any 2-D indexable of 0/1 entries with at least
    ``offset + size`` columns (typically the full n x 256 array).
    """
    m = [[int(matrix[i][j]) for j in range(offset, offset + size)] for i in range(size)]
    return _bareiss(m, size)


def count_nonneg_windows(matrix, size: int, lo: int, hi: int) -> int:
    """Count offsets k in [lo, hi] whose size x size window has det >= 0."""
    count = 0
    for k in range(lo, hi + 1):
        if det01_window(matrix, k, size) >= 0:
            count += 1
    return count


def _bareiss(m, n: int) -> int:
    # Fraction-free elimination: after step t every entry is an exact
    # (t+1)-minor of the input, so the division by the previous pivot is
    # always exact and intermediates stay bounded.
    if n == 1:
        return m[0][0]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if m[t][t] == 0:
            swap = next((i for i in range(t + 1, n) if m[i][t] != 0), -1)
            if swap < 0:
                return 0
            m[t], m[swap] = m[swap], m[t]
            sign = -sign
        piv = m[t][t]
        row_t = m[t]
        for i in range(t + 1, n):
            row_i = m[i]
            a = row_i[t]
            for j in range(t + 1, n):
                row_i[j] = (piv * row_i[j] - a * row_t[j]) // prev
            row_i[t] = 0
        prev = piv
    return sign * m[n - 1][n - 1]
