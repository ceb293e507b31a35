"""Exact integer determinants of square 0/1 matrices.

Two interchangeable backends sit behind :func:`determinant`:

* ``compiled`` — the ``_detcore`` Cython extension, fraction-free
  elimination in native int64/int128. Handles n <= ``_detcore.MAX_N``
  (37), which covers every dimension whose intermediates fit 128 bits.
* ``pure`` — the same algorithm on Python ints, any n up to 256.

The compiled core is preferred when importable; set ``MPOW_PURE_PYTHON=1``
to force the fallback (the benchmark suite uses this to compare both).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import _detpure

try:
    from . import _detcore
except ImportError:  # pragma: no cover - depends on build environment
    _detcore = None

_FORCE_PURE = bool(os.environ.get("MPOW_PURE_PYTHON"))

MAX_DIMENSION = 256

#: Largest oracle input; cofactor expansion is factorial-cost.
NAIVE_MAX_N = 10


class OracleSizeError(ValueError):
    """Raised when the cofactor-expansion oracle is asked for n > NAIVE_MAX_N."""


@dataclass(frozen=True)
class DetResult:
    """Exact signed determinant plus the dimension it was computed at."""

    value: int
    dimension: int


def active_backend() -> str:
    """Name of the backend ``determinant`` dispatches to: 'compiled' or 'pure'."""
    if _detcore is not None and not _FORCE_PURE:
        return "compiled"
    return "pure"


def _use_compiled(n: int) -> bool:
    return active_backend() == "compiled" and n <= _detcore.MAX_N


def as_binary_matrix(m) -> np.ndarray:
    """Validate and normalize input to a square uint8 array of 0/1 entries."""
    arr = np.asarray(m, dtype=np.uint8)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")
    if not np.all(arr <= 1):
        raise ValueError("matrix entries must be 0 or 1")
    return arr


def determinant(m) -> DetResult:
    """Exact determinant of a square 0/1 matrix (fraction-free elimination)."""
    arr = as_binary_matrix(m)
    n = arr.shape[0]
    if _use_compiled(n):
        value = _detcore.det01(arr)
    else:
        value = _detpure.det01(arr.tolist())
    return DetResult(value=value, dimension=n)


def determinant_naive(m) -> DetResult:
    """Cofactor-expansion determinant, the independent test oracle.

    Memoizes minors on column subsets, so cost is O(n * 2^n) rather than
    n!, but there is no elimination and no division anywhere: it shares
    nothing with the production kernel.
    """
    arr = as_binary_matrix(m)
    n = arr.shape[0]
    if n > NAIVE_MAX_N:
        raise OracleSizeError(f"oracle limited to n <= {NAIVE_MAX_N}, got {n}")
    rows = arr.tolist()
    full_mask = (1 << n) - 1
    memo: dict[int, int] = {}

    def minor(mask: int) -> int:
        # Determinant over the columns in `mask`, using the last popcount(mask) rows.
        if mask == 0:
            return 1
        cached = memo.get(mask)
        if cached is not None:
            return cached
        size = mask.bit_count()
        row = rows[n - size]
        total = 0
        pos = 0
        rest = mask
        while rest:
            j = (rest & -rest).bit_length() - 1
            if row[j]:
                sub = minor(mask & ~(1 << j))
                total += sub if pos % 2 == 0 else -sub
            rest &= rest - 1
            pos += 1
        memo[mask] = total
        return total

    return DetResult(value=minor(full_mask), dimension=n)


def hadamard01_bound(n: int) -> int:
    """Largest possible |det| of an n x n 0/1 matrix: floor((n+1)^((n+1)/2) / 2^n).

    Evaluated exactly: for even n the half power is isqrt((n+1)^(n+1)),
    and flooring the square root before the power-of-two division cannot
    change the result.
    """
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")
    return isqrt((n + 1) ** (n + 1)) // (1 << n)


def window_determinant(matrix: np.ndarray, offset: int, size: int) -> int:
    """Determinant of columns [offset, offset+size) of a wide 0/1 array.

    Internal fast path shared by the puzzle criteria; assumes the input
    was produced by the bitmatrix pipeline (already validated uint8 0/1).
    """
    if _use_compiled(size):
        return _detcore.det01_window(matrix, offset, size)
    return _detpure.det01_window(matrix, offset, size)


def count_nonneg_windows(matrix: np.ndarray, size: int, lo: int, hi: int) -> int:
    """Count window offsets in [lo, hi] whose determinant is non-negative."""
    if _use_compiled(size):
        return _detcore.count_nonneg_windows(matrix, size, lo, hi)
    return _detpure.count_nonneg_windows(matrix, size, lo, hi)
