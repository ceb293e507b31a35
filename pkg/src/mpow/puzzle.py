"""The two matrix-determinant acceptance criteria and the pure verifier.

A nonce solves the puzzle for a header of difficulty d when the derived
n x 256 matrix satisfies, in order:

  (i)  s >= d * 65, where s is the signed determinant of the window of
       the first n columns;
  (ii) at least ceil((256 - n)/2 + n/5) of the 256 - n remaining column
       windows (offsets 1 .. 256 - n) have non-negative determinant.

Criterion (ii) is evaluated only after (i) passes; that ordering is part
of the contract and of the miner's phase-time accounting. The signed
value s is compared, not |s|, and zero counts as non-negative in (ii).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from . import detkernel
from .bitmatrix import BitMatrix, matrix_from_hashes
from .header import BlockHeader, header_digest


class UnsatisfiableDifficultyError(ValueError):
    """difficulty * 65 exceeds the maximum possible determinant: no matrix can pass."""


@dataclass(frozen=True)
class PuzzleParams:
    """Puzzle-wide constants.

    ``classic_pow_baseline`` is a test-only switch for the hash-time
    experiments: the miner skips all determinant work and accepts nonces
    by a hash-target comparison instead, mimicking a classic PoW. The
    verifier refuses to operate with it set.
    """

    n: int = 30
    cols: int = 256
    det_multiplier: int = 65
    target_block_time: int = 10
    smooth_factor: int = 2048
    classic_pow_baseline: bool = False

    def __post_init__(self):
        if self.cols != 256:
            raise ValueError("column count is fixed at 256")
        if not 1 <= self.n <= self.cols:
            raise ValueError(f"n must be in [1, {self.cols}], got {self.n}")
        if self.det_multiplier < 1:
            raise ValueError("det_multiplier must be >= 1")
        if self.target_block_time < 1:
            raise ValueError("target_block_time must be >= 1")
        if self.smooth_factor < 1:
            raise ValueError("smooth_factor must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "cols": self.cols,
            "det_multiplier": self.det_multiplier,
            "target_block_time": self.target_block_time,
            "smooth_factor": self.smooth_factor,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PuzzleParams":
        known = {f: obj[f] for f in ("n", "cols", "det_multiplier", "target_block_time", "smooth_factor") if f in obj}
        return cls(**known)


@dataclass(frozen=True)
class PuzzleVerdict:
    """Outcome of verifying one (header, nonce) pair.

    When criterion (i) fails, criterion (ii) is skipped: count is
    reported as 0 with count_evaluated False.
    """

    passed: bool
    s: int
    count: int
    threshold_s: int
    threshold_count: int
    count_evaluated: bool

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "s": self.s,
            "count": self.count,
            "threshold_s": self.threshold_s,
            "threshold_count": self.threshold_count,
            "count_evaluated": self.count_evaluated,
        }


def count_threshold(params: PuzzleParams) -> int:
    """Minimum number of non-negative-determinant windows: ceil((256-n)/2 + n/5)."""
    n = params.n
    return ceil(Fraction(params.cols - n, 2) + Fraction(n, 5))


def window_offsets(params: PuzzleParams) -> range:
    """Criterion-(ii) window offsets: 1 .. 256 - n (the first window is criterion (i)'s)."""
    return range(1, params.cols - params.n + 1)


def check_satisfiable(d: int, params: PuzzleParams) -> int:
    """Validate that s >= d * 65 is achievable at all; returns the threshold."""
    if d < 1:
        raise ValueError(f"difficulty must be >= 1, got {d}")
    threshold = d * params.det_multiplier
    if threshold > detkernel.hadamard01_bound(params.n):
        raise UnsatisfiableDifficultyError(
            f"difficulty {d} needs determinant >= {threshold}, above the "
            f"maximum {detkernel.hadamard01_bound(params.n)} for n={params.n}"
        )
    return threshold


def _params_for(m: BitMatrix, params: PuzzleParams | None) -> PuzzleParams:
    if params is None:
        return PuzzleParams(n=m.rows)
    if params.n != m.rows:
        raise ValueError(f"matrix has {m.rows} rows but params.n = {params.n}")
    return params


def criterion_one(m: BitMatrix, d: int, params: PuzzleParams | None = None) -> tuple[bool, int]:
    """Signed determinant of the first-n-columns window against d * 65."""
    params = _params_for(m, params)
    threshold = check_satisfiable(d, params)
    s = detkernel.window_determinant(m.to_array(), 0, m.rows)
    return s >= threshold, s


def criterion_two(m: BitMatrix, params: PuzzleParams | None = None) -> tuple[bool, int]:
    """Count of non-negative-determinant windows at offsets 1 .. 256 - n."""
    params = _params_for(m, params)
    offsets = window_offsets(params)
    count = detkernel.count_nonneg_windows(m.to_array(), m.rows, offsets.start, offsets.stop - 1)
    return count >= count_threshold(params), count


def verify(header: BlockHeader, nonce: int, params: PuzzleParams | None = None) -> PuzzleVerdict:
    """Evaluate both criteria for (header, nonce); pure and deterministic."""
    params = params or PuzzleParams()
    if params.classic_pow_baseline:
        raise ValueError("the classic-PoW baseline is a mining-experiment flag; refusing to verify with it")
    m = matrix_from_hashes(header_digest(header), nonce, params.n)
    threshold_s = check_satisfiable(header.difficulty, params)
    threshold_count = count_threshold(params)
    ok_one, s = criterion_one(m, header.difficulty, params)
    if not ok_one:
        return PuzzleVerdict(
            passed=False,
            s=s,
            count=0,
            threshold_s=threshold_s,
            threshold_count=threshold_count,
            count_evaluated=False,
        )
    ok_two, count = criterion_two(m, params)
    return PuzzleVerdict(
        passed=ok_two,
        s=s,
        count=count,
        threshold_s=threshold_s,
        threshold_count=threshold_count,
        count_evaluated=True,
    )
