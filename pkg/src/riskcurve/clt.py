"""Normal approximation to the risk curve.

For a gamble with mean ``mu`` and variance ``sigma2`` the probability of
ending ahead after ``n`` plays is approximated by

    Phi(mu * sqrt(n) / sigma) = (1 + erf(mu * sqrt(n / 2) / sigma)) / 2

with no continuity correction.  The error function is computed here rather
than taken from the platform so that results do not drift between libm
versions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .gamble import GambleTable, expected_value, variance

__all__ = [
    "erf",
    "erfc",
    "normal_cdf",
    "normal_quantile",
    "CltParams",
    "prob_pos_clt",
    "min_repeats_clt",
]

_TWO_OVER_SQRT_PI = 1.1283791670955126
_ONE_OVER_SQRT_PI = 0.5641895835477563
_SERIES_LIMIT = 3.0
_TAIL_ZERO = 27.3  # erfc underflows to 0 in double precision beyond this


def _erf_series(x: float) -> float:
    """erf(x) for 0 <= x <= 3 via exp(-x^2) * sum 2^k x^(2k+1) / (2k+1)!!.

    All terms are positive, so there is no cancellation.
    """
    x2 = 2.0 * x * x
    term = x
    total = x
    k = 0
    while term > 1e-17 * total:
        k += 1
        term *= x2 / (2 * k + 1)
        total += term
    return _TWO_OVER_SQRT_PI * math.exp(-x * x) * total


def _erfc_cf(x: float) -> float:
    """erfc(x) for x >= 3 via the Laplace continued fraction (modified Lentz)."""
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    k = 1
    while True:
        a = 0.5 * k
        d = x + a * d
        d = 1.0 / (d if d != 0.0 else tiny)
        c = x + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
        k += 1
        if k > 5000:
            break
    return _ONE_OVER_SQRT_PI * math.exp(-x * x) / f


def erf(x: float) -> float:
    """Error function, absolute error below 1e-15 on the real line."""
    x = float(x)
    if math.isnan(x):
        return x
    if x < 0:
        return -erf(-x)
    if x <= _SERIES_LIMIT:
        return _erf_series(x)
    if x >= 6.0:
        return 1.0
    return 1.0 - _erfc_cf(x)


def erfc(x: float) -> float:
    """Complementary error function ``1 - erf(x)`` with good relative accuracy for large x."""
    x = float(x)
    if math.isnan(x):
        return x
    if x < _SERIES_LIMIT:
        return 1.0 - erf(x)
    if x > _TAIL_ZERO:
        return 0.0
    return _erfc_cf(x)


def normal_cdf(z: float) -> float:
    """Standard normal distribution function."""
    if z >= 0:
        return 1.0 - 0.5 * erfc(z / math.sqrt(2.0))
    return 0.5 * erfc(-z / math.sqrt(2.0))


def _upper_tail(z: float) -> float:
    return 0.5 * erfc(z / math.sqrt(2.0)) if z >= 0 else 1.0 - 0.5 * erfc(-z / math.sqrt(2.0))


def normal_quantile(p: float) -> float:
    """Inverse of :func:`normal_cdf` by bisection on the tail probability."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {p!r}")
    q = 1.0 - p
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _upper_tail(mid) > q:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class CltParams:
    """Mean and variance of one play, kept exact."""

    mu: Fraction
    sigma2: Fraction

    def __post_init__(self):
        if self.sigma2 < 0:
            raise DomainError(f"variance must be nonnegative, got {self.sigma2}")

    @classmethod
    def from_table(cls, table: GambleTable) -> "CltParams":
        return cls(expected_value(table), variance(table))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


def _z_score(params: CltParams, n) -> float:
    return float(params.mu) * math.sqrt(n) / params.sigma


def prob_pos_clt(table: GambleTable, n: int) -> float:
    """Normal approximation ``Phi(mu*sqrt(n)/sigma)`` to the chance of ending ahead."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    params = CltParams.from_table(table)
    if params.sigma2 == 0:
        raise DomainError("gamble is deterministic (zero variance); the exact answer is 0 or 1")
    return normal_cdf(_z_score(params, n))


def min_repeats_clt(table: GambleTable, epsilon: float) -> int:
    """Smallest ``n`` whose normal approximation is at least ``1 - epsilon``.

    Starts from ``ceil((sigma/mu)**2 * z**2)`` and then nudges ``n`` so that
    the approximation clears the level at ``n`` and misses it at ``n - 1``.
    """
    eps = float(epsilon)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    params = CltParams.from_table(table)
    if params.mu <= 0:
        raise DomainError("gamble has non-positive expected value; no number of repeats helps")
    if params.sigma2 == 0:
        return 1

    def tail(n: int) -> float:
        return _upper_tail(_z_score(params, n))

    z = normal_quantile(1.0 - eps)
    if z <= 0:
        n = 1
    else:
        ratio = float(params.sigma2 / params.mu**2)
        n = max(1, math.ceil(ratio * z * z))
    while n > 1 and tail(n - 1) <= eps:
        n -= 1
    while tail(n) > eps:
        n += 1
    return n
