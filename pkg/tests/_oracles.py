"""Independent reference computations used only by the tests.

Nothing here imports the arithmetic kernels under test: distributions are
built by enumerating outcome sequences with ``itertools.product``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction


def enumerate_sums(entries, n):
    """Distribution of the total of ``n`` independent draws, by brute force."""
    dist = defaultdict(Fraction)
    for seq in itertools.product(entries, repeat=n):
        total = 0
        prob = Fraction(1)
        for outcome, p in seq:
            total += outcome
            prob *= Fraction(p)
        dist[total] += prob
    return dict(dist)


def enumerate_prob_pos(entries, n, strict=True):
    dist = enumerate_sums(entries, n)
    return sum((p for s, p in dist.items() if (s > 0 if strict else s >= 0)), Fraction(0))


def bisect_int(pred, lo, hi):
    """Least integer in ``(lo, hi]`` with ``pred`` true, assuming monotone ``pred``."""
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


# Tables with at most three entries; zero outcomes included so that the
# strict and non-strict variants differ.
FIXTURE_TABLES = [
    [(-1, Fraction(1, 2)), (2, Fraction(1, 2))],
    [(-1, Fraction(2, 3)), (3, Fraction(1, 3))],
    [(-1, Fraction(9, 10)), (10, Fraction(1, 10))],
    [(-1, Fraction(1, 2)), (0, Fraction(1, 4)), (2, Fraction(1, 4))],
    [(-3, Fraction(1, 3)), (1, Fraction(1, 2)), (4, Fraction(1, 6))],
    [(-2, Fraction(1, 5)), (1, Fraction(3, 5)), (1, Fraction(1, 5))],
    [(0, Fraction(1))],
    [(-5, Fraction(7, 8)), (40, Fraction(1, 8))],
]
