"""Matrix proof-of-work: determinant puzzles over hash-derived 0/1 matrices.

The puzzle replaces the classic hash-target comparison with two exact
integer determinant conditions on an n x 256 binary matrix derived from
the block header and nonce. This package provides the matrix pipeline,
the exact determinant kernel (compiled core with pure-Python fallback),
the two-criteria verifier, a nonce-searching miner with phase timing,
the difficulty controller, a closed-loop chain simulator, and the
statistical experiment harness behind the ``mpow`` CLI.
"""

from .bitmatrix import BitMatrix, SquareWindow, matrix_from_hashes, window
from .detkernel import DetResult, determinant, determinant_naive, hadamard01_bound
from .difficulty import DifficultyState, adjust
from .header import BlockHeader, decode, encode, header_digest
from .miner import MinerConfig, MiningSolution, estimate_success_probability, mine
from .puzzle import (
    PuzzleParams,
    PuzzleVerdict,
    UnsatisfiableDifficultyError,
    count_threshold,
    criterion_one,
    criterion_two,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "SquareWindow",
    "matrix_from_hashes",
    "window",
    "DetResult",
    "determinant",
    "determinant_naive",
    "hadamard01_bound",
    "DifficultyState",
    "adjust",
    "BlockHeader",
    "encode",
    "decode",
    "header_digest",
    "MinerConfig",
    "MiningSolution",
    "mine",
    "estimate_success_probability",
    "PuzzleParams",
    "PuzzleVerdict",
    "UnsatisfiableDifficultyError",
    "count_threshold",
    "criterion_one",
    "criterion_two",
    "verify",
    "__version__",
]
