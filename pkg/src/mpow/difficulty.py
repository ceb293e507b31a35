"""Block difficulty controller.

    d = d_p + floor(d_p / f) * max(1 - floor((t - t_p) / T), -99)

with T the target block time (default 10 s) and f the smoothing divisor
(default 2048). Integer floor division throughout, result clamped to a
minimum of 1 so criterion (i) never degenerates to s >= 0.

Blocks faster than T raise difficulty by floor(d_p / f); each full extra
T of delay subtracts another floor(d_p / f), down to the -99 clamp. When
f > d_p the step is 0 and difficulty freezes, so simulations either start
at d_p >= f or run with f = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .puzzle import PuzzleParams

MIN_DIFFICULTY = 1
MAX_SLOWDOWN_STEPS = 99


def adjust(d_p: int, t_minus_tp: int, params: PuzzleParams | None = None) -> int:
    """Next difficulty from the previous one and the observed block interval."""
    params = params or PuzzleParams()
    if d_p < MIN_DIFFICULTY:
        raise ValueError(f"previous difficulty must be >= {MIN_DIFFICULTY}, got {d_p}")
    if t_minus_tp < 0:
        raise ValueError(f"block interval must be >= 0, got {t_minus_tp}")
    step = d_p // params.smooth_factor
    factor = max(1 - t_minus_tp // params.target_block_time, -MAX_SLOWDOWN_STEPS)
    return max(MIN_DIFFICULTY, d_p + step * factor)


@dataclass
class DifficultyState:
    """Running controller state: current difficulty and the last block's timestamp."""

    current: int
    previous_time: int

    def observe_block(self, timestamp: int, params: PuzzleParams | None = None) -> int:
        """Feed the next block's timestamp; returns the updated difficulty."""
        if timestamp < self.previous_time:
            raise ValueError("timestamps must be non-decreasing")
        self.current = adjust(self.current, timestamp - self.previous_time, params)
        self.previous_time = timestamp
        return self.current
