"""Hash-derived n x 256 binary matrices and their square column windows.

Row i of the matrix is the 256-bit digest SHA-256(header_digest || nonce
as 8-byte big-endian || i as 4-byte big-endian), with the most significant
bit of byte 0 mapped to column 0. The derivation is deterministic and
domain-separated per row; golden tests freeze it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

COLS = 256
ROW_BYTES = COLS // 8
MAX_ROWS = 256


def row_hashes(header_digest: bytes, nonce: int, n: int) -> list[bytes]:
    """The n per-row SHA-256 digests for (header_digest, nonce).

    This is the miner's entire hash phase for one nonce: exactly n SHA-256
    invocations, nothing else.
    """
    if len(header_digest) != 32:
        raise ValueError(f"header digest must be 32 bytes, got {len(header_digest)}")
    if not 0 <= nonce < 1 << 64:
        raise ValueError("nonce must fit an unsigned 64-bit integer")
    if not 1 <= n <= MAX_ROWS:
        raise ValueError(f"row count must be in [1, {MAX_ROWS}], got {n}")
    prefix = header_digest + nonce.to_bytes(8, "big")
    return [hashlib.sha256(prefix + i.to_bytes(4, "big")).digest() for i in range(n)]


class BitMatrix:
    """Immutable bit-packed n x 256 binary matrix.

    The packed form is the concatenation of the n row digests; entry
    access and array conversion derive from it. Instances are safe to
    share across threads.
    """

    __slots__ = ("rows", "_data", "_array")

    cols = COLS

    def __init__(self, row_bytes: bytes):
        if len(row_bytes) % ROW_BYTES != 0:
            raise ValueError(f"packed data must be a multiple of {ROW_BYTES} bytes")
        n = len(row_bytes) // ROW_BYTES
        if not 1 <= n <= MAX_ROWS:
            raise ValueError(f"row count must be in [1, {MAX_ROWS}], got {n}")
        self.rows = n
        self._data = bytes(row_bytes)
        self._array = None

    def to_bytes(self) -> bytes:
        """Packed row-major byte form (row i = its 32-byte digest)."""
        return self._data

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitMatrix":
        return cls(data)

    def entry(self, i: int, j: int) -> int:
        """Entry (i, j) in {0, 1}; out-of-range indices raise IndexError."""
        if not 0 <= i < self.rows:
            raise IndexError(f"row {i} out of range for {self.rows} rows")
        if not 0 <= j < COLS:
            raise IndexError(f"column {j} out of range for {COLS} columns")
        return (self._data[i * ROW_BYTES + (j >> 3)] >> (7 - (j & 7))) & 1

    def to_array(self) -> np.ndarray:
        """Unpacked (rows, 256) uint8 array, cached; treat as read-only."""
        if self._array is None:
            packed = np.frombuffer(self._data, dtype=np.uint8).reshape(self.rows, ROW_BYTES)
            arr = np.unpackbits(packed, axis=1)
            arr.flags.writeable = False
            self._array = arr
        return self._array

    def window(self, offset: int, size: int | None = None) -> np.ndarray:
        """Square submatrix of columns [offset, offset + size)."""
        if size is None:
            size = self.rows
        return window(self, SquareWindow(offset=offset, size=size))

    def dump(self) -> str:
        """Debug form: one line per row, 256 characters of '0'/'1'."""
        arr = self.to_array()
        return "\n".join("".join("1" if v else "0" for v in row) for row in arr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self._data))

    def __repr__(self) -> str:
        return f"BitMatrix(rows={self.rows}, cols={COLS})"


@dataclass(frozen=True)
class SquareWindow:
    """A square column window: columns [offset, offset + size)."""

    offset: int
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("window size must be positive")
        if self.offset < 0 or self.offset + self.size > COLS:
            raise ValueError(
                f"window [{self.offset}, {self.offset + self.size}) exceeds {COLS} columns"
            )


def matrix_from_hashes(header_digest: bytes, nonce: int, n: int = 30) -> BitMatrix:
    """Construct the n x 256 matrix for (header_digest, nonce)."""
    return BitMatrix(b"".join(row_hashes(header_digest, nonce, n)))


def window(m: BitMatrix, w: SquareWindow) -> np.ndarray:
    """The w.size x w.size submatrix of m at column offset w.offset.

    The window must be square with the matrix: w.size == m.rows.
    """
    if w.size != m.rows:
        raise ValueError(f"window size {w.size} != matrix rows {m.rows}")
    return m.to_array()[:, w.offset : w.offset + w.size]


def parse_bit_lines(text: str) -> np.ndarray:
    """Parse the dump format back into a uint8 array (inverse of dump)."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    width = len(lines[0])
    rows = []
    for lineno, line in enumerate(lines, 1):
        if len(line) != width:
            raise ValueError(f"line {lineno}: expected {width} characters, got {len(line)}")
        if set(line) - {"0", "1"}:
            raise ValueError(f"line {lineno}: entries must be '0' or '1'")
        rows.append([1 if c == "1" else 0 for c in line])
    return np.array(rows, dtype=np.uint8)
