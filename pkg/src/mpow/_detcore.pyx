# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled determinant kernels for 0/1 matrices.

Exact integer Bareiss elimination specialised to binary inputs. All
intermediates are minors of the input matrix, so their magnitude is
capped by the 0/1 Hadamard bound floor((t+1)^((t+1)/2) / 2^t) for a
t x t minor. That gives two hard capacity limits, derived once with
exact big-integer arithmetic and frozen here:

  - elimination steps t <= 22 fit signed 64-bit numerators,
  - full elimination fits signed 128-bit for n <= 38, but the final
    value only fits the int64 return for n <= 37.

Hence MAX_N = 37; larger matrices go through the pure-Python kernel.
"""

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64
ctypedef unsigned char u8

cdef enum:
    MAXN = 37
    I64_STEPS = 22

MAX_N = MAXN


cdef i64 _det_i64(const u8[:, :] m, Py_ssize_t off, Py_ssize_t n) noexcept nogil:
    cdef i64 w64[MAXN * MAXN]
    cdef i128 w128[MAXN * MAXN]
    cdef Py_ssize_t i, j, t, swap
    cdef i64 sign = 1
    cdef i64 prev64 = 1, piv64, a64
    cdef i128 prev128, piv128, a128
    cdef Py_ssize_t split

    for i in range(n):
        for j in range(n):
            w64[i * n + j] = m[i, off + j]
    if n == 1:
        return w64[0]

    # Phase 1: int64 arithmetic while numerators provably fit.
    split = I64_STEPS if I64_STEPS < n - 1 else n - 1
    for t in range(split):
        if w64[t * n + t] == 0:
            swap = -1
            for i in range(t + 1, n):
                if w64[i * n + t] != 0:
                    swap = i
                    break
            if swap < 0:
                return 0
            for j in range(t, n):
                piv64 = w64[t * n + j]
                w64[t * n + j] = w64[swap * n + j]
                w64[swap * n + j] = piv64
            sign = -sign
        piv64 = w64[t * n + t]
        for i in range(t + 1, n):
            a64 = w64[i * n + t]
            for j in range(t + 1, n):
                w64[i * n + j] = (piv64 * w64[i * n + j] - a64 * w64[t * n + j]) // prev64
            w64[i * n + t] = 0
        prev64 = piv64
    if split == n - 1:
        return sign * w64[(n - 1) * n + (n - 1)]

    # Phase 2: widen to int128 for the remaining steps.
    for i in range(split, n):
        for j in range(split, n):
            w128[i * n + j] = w64[i * n + j]
    prev128 = prev64
    for t in range(split, n - 1):
        if w128[t * n + t] == 0:
            swap = -1
            for i in range(t + 1, n):
                if w128[i * n + t] != 0:
                    swap = i
                    break
            if swap < 0:
                return 0
            for j in range(t, n):
                piv128 = w128[t * n + j]
                w128[t * n + j] = w128[swap * n + j]
                w128[swap * n + j] = piv128
            sign = -sign
        piv128 = w128[t * n + t]
        for i in range(t + 1, n):
            a128 = w128[i * n + t]
            for j in range(t + 1, n):
                w128[i * n + j] = (piv128 * w128[i * n + j] - a128 * w128[t * n + j]) // prev128
            w128[i * n + t] = 0
        prev128 = piv128
    return sign * <i64> w128[(n - 1) * n + (n - 1)]


def det01(const u8[:, :] m) -> int:
    """Exact determinant of a square 0/1 matrix with n <= MAX_N."""
    cdef Py_ssize_t n = m.shape[0]
    cdef i64 d
    if m.shape[1] != n:
        raise ValueError("matrix is not square")
    if n < 1 or n > MAXN:
        raise ValueError(f"compiled kernel handles 1 <= n <= {MAXN}, got {n}")
    with nogil:
        d = _det_i64(m, 0, n)
    return d


def det01_window(const u8[:, :] m, Py_ssize_t offset, Py_ssize_t size) -> int:
    """Determinant of the size x size window of columns [offset, offset+size)."""
    cdef i64 d
    if size < 1 or size > MAXN or size > m.shape[0]:
        raise ValueError("bad window size")
    if offset < 0 or offset + size > m.shape[1]:
        raise ValueError("window out of bounds")
    with nogil:
        d = _det_i64(m, offset, size)
    return d


def count_nonneg_windows(const u8[:, :] m, Py_ssize_t size, Py_ssize_t lo, Py_ssize_t hi) -> int:
    """Count offsets k in [lo, hi] whose window determinant is >= 0."""
    cdef Py_ssize_t k
    cdef Py_ssize_t count = 0
    if size < 1 or size > MAXN or size > m.shape[0]:
        raise ValueError("bad window size")
    if lo < 0 or hi + size > m.shape[1]:
        raise ValueError("window range out of bounds")
    with nogil:
        for k in range(lo, hi + 1):
            if _det_i64(m, k, size) >= 0:
                count += 1
    return count
