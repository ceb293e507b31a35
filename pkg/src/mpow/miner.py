"""Nonce search with hash-phase / determinant-phase timing.

Per nonce the miner spends its time in two places: the n SHA-256 row
hashes (hash phase) and the exact determinants (determinant phase) —
one criterion-(i) window, plus the 256 - n criterion-(ii) windows only
when (i) passed. The hash_time_fraction of a solution is
hash / (hash + determinant) accumulated over the whole search, with
orchestration (object assembly, bookkeeping) excluded from both sides.

Multiple workers split the nonce sequence into disjoint residue classes
and share only a cancellation flag and a single-winner result slot;
single-worker searches are fully deterministic.
"""

from __future__ import annotations

import hashlib
import os
import threading
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from time import perf_counter

from . import detkernel
from .bitmatrix import BitMatrix, matrix_from_hashes, row_hashes
from .header import BlockHeader, header_digest
from .puzzle import PuzzleParams, check_satisfiable, count_threshold, window_offsets

_U64 = 1 << 64

# Classic-PoW baseline: accept when the leading 64 bits of row hash 0 fall
# under this target; ~64 * difficulty nonces per block on average.
_BASELINE_SCALE = 64


@dataclass(frozen=True)
class MinerConfig:
    """Search-space slicing. stride > 1 reserves residue classes for other miners."""

    start_nonce: int = 0
    nonce_stride: int = 1
    max_attempts: int | None = None
    rng_seed: int | None = None

    def __post_init__(self):
        if self.nonce_stride < 1:
            raise ValueError("nonce stride must be >= 1")
        if self.max_attempts is not None and self.max_attempts < 0:
            raise ValueError("max_attempts must be >= 0")

    def effective_start(self) -> int:
        if self.rng_seed is None:
            return self.start_nonce % _U64
        material = hashlib.sha256(b"mpow/start-nonce" + self.rng_seed.to_bytes(8, "big", signed=True)).digest()
        return int.from_bytes(material[:8], "big")


@dataclass(frozen=True)
class MiningSolution:
    """A nonce that satisfied both criteria, with its witnesses and telemetry."""

    nonce: int
    s: int
    count: int
    attempts: int
    hash_time_fraction: float

    def to_json_dict(self) -> dict:
        return {
            "nonce": self.nonce,
            "s": self.s,
            "count": self.count,
            "attempts": self.attempts,
            "hash_time_fraction": self.hash_time_fraction,
        }


@dataclass(frozen=True)
class Exhausted:
    """Search hit its attempt cap without a solution. Non-fatal."""

    attempts: int


class _SearchState:
    """Winner slot and cancellation flag shared by workers."""

    def __init__(self):
        self.stop = threading.Event()
        self.lock = threading.Lock()
        self.winner = None

    def offer(self, nonce: int, s: int, count: int) -> None:
        with self.lock:
            if self.winner is None:
                self.winner = (nonce, s, count)
        self.stop.set()


def _search_worker(
    digest: bytes,
    params: PuzzleParams,
    threshold_s: int,
    start: int,
    stride: int,
    first_index: int,
    index_step: int,
    max_attempts: int | None,
    state: _SearchState,
    on_nonce,
) -> tuple[int, float, float]:
    """Evaluate nonces start + j*stride for j = first_index, first_index+index_step, ...

    Returns (attempts, hash_seconds, det_seconds) for this worker.
    """
    n = params.n
    threshold_count = count_threshold(params)
    offsets = window_offsets(params)
    baseline = params.classic_pow_baseline
    if baseline:
        difficulty = threshold_s // params.det_multiplier
        baseline_target = (_U64 - 1) // (_BASELINE_SCALE * difficulty)
    else:
        baseline_target = 0
    attempts = 0
    hash_seconds = 0.0
    det_seconds = 0.0
    j = first_index
    while not state.stop.is_set():
        if max_attempts is not None and j >= max_attempts:
            break
        nonce = (start + j * stride) % _U64
        if on_nonce is not None:
            on_nonce(nonce)
        attempts += 1

        t0 = perf_counter()
        rows = row_hashes(digest, nonce, n)
        hash_seconds += perf_counter() - t0

        if baseline:
            if int.from_bytes(rows[0][:8], "big") <= baseline_target:
                state.offer(nonce, 0, 0)
                break
            j += index_step
            continue

        arr = BitMatrix(b"".join(rows)).to_array()
        t1 = perf_counter()
        s = detkernel.window_determinant(arr, 0, n)
        count = -1
        if s >= threshold_s:
            count = detkernel.count_nonneg_windows(arr, n, offsets.start, offsets.stop - 1)
        det_seconds += perf_counter() - t1

        if count >= threshold_count:
            state.offer(nonce, s, count)
            break
        j += index_step
    return attempts, hash_seconds, det_seconds


def mine(
    header: BlockHeader,
    params: PuzzleParams | None = None,
    cfg: MinerConfig | None = None,
    workers: int = 1,
    on_nonce=None,
) -> MiningSolution | Exhausted:
    """Search nonces for `header` until both criteria pass or the cap is hit.

    With workers = K, worker i takes the subsequence of nonces whose index
    is congruent to i mod K, so the union is a partition of the single-
    worker sequence; the first solution found wins and cancels the rest.
    """
    params = params or PuzzleParams()
    cfg = cfg or MinerConfig()
    if workers < 1:
        raise ValueError("workers must be >= 1")
    threshold_s = check_satisfiable(header.difficulty, params)
    digest = header_digest(header)
    start = cfg.effective_start()
    state = _SearchState()

    if workers == 1:
        tallies = [
            _search_worker(
                digest, params, threshold_s, start, cfg.nonce_stride, 0, 1, cfg.max_attempts, state, on_nonce
            )
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _search_worker,
                    digest,
                    params,
                    threshold_s,
                    start,
                    cfg.nonce_stride,
                    i,
                    workers,
                    cfg.max_attempts,
                    state,
                    on_nonce,
                )
                for i in range(workers)
            ]
            tallies = [f.result() for f in futures]

    attempts = sum(t[0] for t in tallies)
    hash_seconds = sum(t[1] for t in tallies)
    det_seconds = sum(t[2] for t in tallies)
    total = hash_seconds + det_seconds
    fraction = hash_seconds / total if total > 0 else 0.0

    if state.winner is None:
        return Exhausted(attempts=attempts)
    nonce, s, count = state.winner
    return MiningSolution(nonce=nonce, s=s, count=count, attempts=attempts, hash_time_fraction=fraction)


def _sample_digest(seed: int, index: int) -> bytes:
    material = seed.to_bytes(8, "big", signed=True) + index.to_bytes(8, "big")
    return hashlib.sha256(b"mpow/sample" + material).digest()


@lru_cache(maxsize=8)
def _success_table(params: PuzzleParams, samples: int, seed: int):
    """Sorted criterion-(i) determinants with matching criterion-(ii) outcomes.

    One set of sampled matrices serves every difficulty: P(pass at d) is
    the fraction of samples with s >= d * 65 whose window count clears the
    threshold. Counts are only computed for samples that can pass at d = 1
    (s >= 65); the rest never matter.
    """
    n = params.n
    thr_count = count_threshold(params)
    offsets = window_offsets(params)
    digests = [_sample_digest(seed, i) for i in range(samples)]
    s_values = []
    candidates = []
    for digest in digests:
        arr = matrix_from_hashes(digest, 0, n).to_array()
        s = detkernel.window_determinant(arr, 0, n)
        s_values.append(s)
        if s >= params.det_multiplier:
            candidates.append((len(s_values) - 1, digest))

    def count_ok(item) -> bool:
        _, digest = item
        arr = matrix_from_hashes(digest, 0, n).to_array()
        count = detkernel.count_nonneg_windows(arr, n, offsets.start, offsets.stop - 1)
        return count >= thr_count

    # The compiled kernel releases the GIL, so threads actually overlap.
    if detkernel.active_backend() == "compiled" and len(candidates) > 64:
        with ThreadPoolExecutor(max_workers=os.cpu_count()) as pool:
            ok_flags = list(pool.map(count_ok, candidates, chunksize=32))
    else:
        ok_flags = [count_ok(item) for item in candidates]

    ok_by_index = {idx: ok for (idx, _), ok in zip(candidates, ok_flags)}
    pairs = sorted((s, ok_by_index.get(i, False)) for i, s in enumerate(s_values))
    s_sorted = [s for s, _ in pairs]
    suffix_ok = [0] * (samples + 1)
    for i in range(samples - 1, -1, -1):
        suffix_ok[i] = suffix_ok[i + 1] + (1 if pairs[i][1] else 0)
    return s_sorted, suffix_ok


def estimate_success_probability(
    params: PuzzleParams,
    d: int,
    samples: int,
    seed: int = 0,
    include_second_criterion: bool = True,
) -> float:
    """Monte-Carlo P(a random nonce solves the puzzle at difficulty d).

    Deterministic for a fixed seed: sample matrices come from a seeded
    SHA-256 digest stream through the production matrix pipeline.
    """
    if params.classic_pow_baseline:
        raise ValueError("success estimation applies to the matrix puzzle, not the baseline")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if d < 1:
        raise ValueError(f"difficulty must be >= 1, got {d}")
    threshold = d * params.det_multiplier
    if threshold > detkernel.hadamard01_bound(params.n):
        return 0.0
    s_sorted, suffix_ok = _success_table(params, samples, seed)
    idx = bisect_left(s_sorted, threshold)
    if include_second_criterion:
        return suffix_ok[idx] / samples
    return (samples - idx) / samples
