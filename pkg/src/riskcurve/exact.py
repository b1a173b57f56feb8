"""Exact risk curves: the probability of ending ahead after ``n`` repeats.

``prob_pos(M, n)`` is the positive part of the ``n``-th power of the gamble's
generating function.  Point queries use binary exponentiation; sweeps
multiply by the base once per step and read off every ``n`` on the way.

The curve is not monotone in general (``G_2`` gives 1/2, 3/4, 1/2 for
``n = 1, 2, 3``), so the minimal-``n`` search insists on a whole window of
consecutive ``n`` clearing the threshold.
"""
from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError, NotFoundError
from .gamble import GambleTable, expected_value
from .laurent import pgf, positive_part_of_power, positive_part_sweep

__all__ = [
    "ProbSeries",
    "MinRepeats",
    "prob_pos",
    "prob_pos_sweep",
    "min_repeats",
    "format_decimal",
    "as_fraction",
]


def format_decimal(value: Fraction, places: int = 10) -> str:
    """Round an exact rational half-to-even and print ``places`` decimals."""
    q = round(Fraction(value) * 10**places)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def as_fraction(x) -> Fraction:
    """Exact rational from a Fraction, int, ``"num/den"``/decimal string or float.

    Floats go through their shortest repr, so ``0.1`` means one tenth.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _check_n(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class ProbSeries:
    """Exact values ``n -> P(net gain > 0)`` (or ``>= 0`` when not strict)."""

    gamble: GambleTable
    strict: bool
    values: tuple[tuple[int, Fraction], ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for n, p in self.values:
            if not 0 <= p <= 1:
                raise DomainError(f"probability {p} at n={n} outside [0, 1]")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.values)

    def __getitem__(self, n: int) -> Fraction:
        """Value at repeat count ``n`` (not a positional index)."""
        lo = self.values[0][0] if self.values else 1
        j = n - lo
        if 0 <= j < len(self.values) and self.values[j][0] == n:
            return self.values[j][1]
        for m, p in self.values:
            if m == n:
                return p
        raise KeyError(n)

    @property
    def ns(self) -> np.ndarray:
        return np.array([n for n, _ in self.values], dtype=np.int64)

    @property
    def probabilities(self) -> list[Fraction]:
        return [p for _, p in self.values]

    def as_float(self) -> np.ndarray:
        return np.array([float(p) for _, p in self.values])

    def head(self, count: int) -> "ProbSeries":
        return ProbSeries(self.gamble, self.strict, self.values[:count], dict(self.meta))

    def to_csv(self, places: int = 10) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "prob_fraction", "prob_decimal"])
        for n, p in self.values:
            writer.writerow([n, str(p), format_decimal(p, places)])
        return buf.getvalue()

    def to_json(self, places: int = 10) -> str:
        return json.dumps(
            {
                "gamble": json.loads(self.gamble.to_json()),
                "label": self.gamble.label,
                "strict": self.strict,
                "meta": self.meta,
                "rows": [
                    {"n": n, "prob_fraction": str(p), "prob_decimal": format_decimal(p, places)}
                    for n, p in self.values
                ],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "ProbSeries":
        data = json.loads(text)
        gamble = GambleTable(data["gamble"], label=data.get("label"))
        values = tuple((int(r["n"]), Fraction(r["prob_fraction"])) for r in data["rows"])
        return cls(gamble, bool(data["strict"]), values, data.get("meta") or {})


def prob_pos(table: GambleTable, n: int, strict: bool = True) -> Fraction:
    """Exact probability of net gain ``> 0`` (``>= 0`` if not strict) after ``n`` plays."""
    n = _check_n(n)
    return positive_part_of_power(pgf(table), n, strict)


def prob_pos_sweep(table: GambleTable, n_max: int, strict: bool = True) -> ProbSeries:
    """``prob_pos`` for every ``n = 1..n_max`` in one iterative pass."""
    n_max = _check_n(n_max, "n_max")
    vals = positive_part_sweep(pgf(table), n_max, strict)
    return ProbSeries(
        table,
        strict,
        tuple((n, p) for n, p in enumerate(vals, start=1)),
        {"method": "exact"},
    )


@dataclass(frozen=True)
class MinRepeats:
    n: int
    probability: Fraction
    worst_in_window: Fraction
    certificate: str


def min_repeats(
    table: GambleTable,
    epsilon,
    strict: bool = True,
    window: int = 10,
    horizon: int = 1000,
    series: ProbSeries | None = None,
) -> MinRepeats:
    """Least ``n <= horizon`` with ``prob_pos(m) >= 1 - epsilon`` for all ``m`` in ``[n, n + window]``.

    Raises :class:`NotFoundError` when no such ``n`` exists within the
    horizon, and also (after a warning) when the gamble's mean is not
    positive.  A precomputed ``series`` reaching ``horizon + window`` may be
    passed in to skip the sweep.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    window = _check_n(window, "window")
    horizon = _check_n(horizon, "horizon")
    if expected_value(table) <= 0:
        warnings.warn("gamble has non-positive expected value; no repeat count is safe", stacklevel=2)
        raise NotFoundError("expected value <= 0")
    need = horizon + window
    if series is None or len(series) < need or series.strict != strict:
        series = prob_pos_sweep(table, need, strict)
    target = 1 - eps
    probs = series.probabilities[:need]
    # run[i] = number of consecutive values from index i that clear the target
    ok = [p >= target for p in probs]
    run = 0
    runs = [0] * len(ok)
    for i in range(len(ok) - 1, -1, -1):
        run = run + 1 if ok[i] else 0
        runs[i] = run
    for i in range(horizon):
        if runs[i] >= window + 1:
            n = i + 1
            worst = min(probs[i:i + window + 1])
            cert = (
                f"prob_pos(m) >= {target} for m = {n}..{n + window} "
                f"(min {format_decimal(worst)}, strict={strict})"
            )
            return MinRepeats(n, probs[i], worst, cert)
    raise NotFoundError(f"no n <= {horizon} keeps probability >= {target} over a window of {window}")
