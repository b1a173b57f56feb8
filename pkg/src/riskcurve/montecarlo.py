"""Seeded Monte Carlo dry runs of a repeated gamble.

The generator is xorshift64* (shifts 12, 25, 27; multiplier
0x2545F4914F6CDD1D) with its state seeded through SplitMix64, so a seed
gives the same stream on every platform and in any language that implements
the same two recipes.

Draws use cumulative inversion on a fixed-point ladder: threshold ``i`` is
``floor(2**64 * (p_1 + ... + p_i))`` with the last one pinned to ``2**64``,
and a raw 64-bit output ``u`` selects the first threshold above it.  Each
interval is off by less than ``2**-64`` of probability.

Parallel runs split the ``N`` runs into contiguous blocks; block ``w`` uses a
generator seeded with the ``w``-th SplitMix64 output of the master seed.
One block reproduces the single-worker stream exactly.
"""
from __future__ import annotations

import bisect
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError
from .gamble import GambleTable

__all__ = [
    "SplitMix64",
    "XorShift64Star",
    "SimConfig",
    "SimSummary",
    "simulate_run",
    "simulate_totals",
    "simulate",
    "worker_seeds",
]

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_XS_MULT = 0x2545F4914F6CDD1D


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator; the seed passes through SplitMix64 first."""

    def __init__(self, seed: int = 0):
        state = SplitMix64(seed).next()
        self.state = state or _GOLDEN

    @classmethod
    def from_state(cls, state: int) -> "XorShift64Star":
        if not state & MASK64:
            raise DomainError("xorshift state must be nonzero")
        obj = cls.__new__(cls)
        obj.state = state & MASK64
        return obj

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * _XS_MULT) & MASK64

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))


def worker_seeds(seed: int, workers: int) -> list[int]:
    """Initial xorshift states for ``workers`` blocks derived from one seed."""
    sm = SplitMix64(seed)
    return [sm.next() or _GOLDEN for _ in range(workers)]


def _ladder(table: GambleTable) -> tuple[list[int], list[int]]:
    outcomes = table.outcomes
    cum = Fraction(0)
    thresholds = []
    for p in table.probabilities[:-1]:
        cum += p
        thresholds.append((cum.numerator << 64) // cum.denominator)
    thresholds.append(1 << 64)
    return thresholds, outcomes


@dataclass(frozen=True)
class SimConfig:
    n: int
    N: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for name in ("n", "N", "workers"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MASK64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


class SimSummary(NamedTuple):
    mean_gain: float
    win_fraction: float


def simulate_run(table: GambleTable, n: int, rng: XorShift64Star) -> int:
    """Total gain of one run of ``n`` independent plays."""
    thresholds, outcomes = _ladder(table)
    return _run(thresholds, outcomes, n, rng)


def _run(thresholds, outcomes, n, rng) -> int:
    pick = bisect.bisect_right
    total = 0
    x = rng.state
    for _ in range(n):
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        total += outcomes[pick(thresholds, (x * _XS_MULT) & MASK64)]
    rng.state = x
    return total


def _block(args) -> list[int]:
    thresholds, outcomes, n, runs, state = args
    rng = XorShift64Star.from_state(state)
    return [_run(thresholds, outcomes, n, rng) for _ in range(runs)]


def simulate_totals(table: GambleTable, config: SimConfig) -> list[int]:
    """Per-run totals for ``config.N`` runs of ``config.n`` plays each."""
    thresholds, outcomes = _ladder(table)
    states = worker_seeds(config.seed, config.workers)
    base, extra = divmod(config.N, config.workers)
    sizes = [base + (w < extra) for w in range(config.workers)]
    jobs = [(thresholds, outcomes, config.n, size, s) for size, s in zip(sizes, states) if size]
    if len(jobs) == 1:
        return _block(jobs[0])
    with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
        blocks = list(pool.map(_block, jobs))
    return [t for block in blocks for t in block]


def simulate(table: GambleTable, n: int, N: int, seed: int = 0, workers: int = 1) -> SimSummary:
    """Mean run total and fraction of runs ending strictly ahead."""
    totals = simulate_totals(table, SimConfig(n, N, seed, workers))
    return SimSummary(sum(totals) / N, sum(1 for t in totals if t > 0) / N)
