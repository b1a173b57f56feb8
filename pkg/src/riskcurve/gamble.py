"""One-shot gamble probability tables.

A table is an ordered list of ``(outcome, probability)`` pairs with integer
outcomes and exact rational probabilities summing to one.  Duplicate outcomes
are kept as given so that printed tables read exactly like the classic
St. Petersburg listing (the two ``2**k`` entries stay separate).
"""
from __future__ import annotations

import json
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = [
    "GambleTable",
    "st_pete_table",
    "st_pete_listing",
    "g_family_table",
    "expected_value",
    "variance",
    "shot_win_probability",
]


def _as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, (Integral, Rational)):
        return Fraction(p)
    if isinstance(p, str):
        return Fraction(p.strip())
    raise DomainError(f"probability {p!r} is not an exact rational")


@dataclass(frozen=True)
class GambleTable:
    """Validated, immutable probability table.

    Parameters
    ----------
    entries : sequence of (int, rational)
        Outcome/probability pairs.  Probabilities may be given as
        :class:`fractions.Fraction`, ints or ``"num/den"`` strings; floats are
        rejected because they are not exact.
    label : str, optional
        Free-form description carried into serialized artifacts.
    """

    entries: tuple[tuple[int, Fraction], ...]
    label: str | None = None

    def __init__(self, entries: Iterable[Sequence], label: str | None = None):
        cleaned = []
        for pair in entries:
            if len(pair) != 2:
                raise DomainError(f"table entry {pair!r} is not an (outcome, probability) pair")
            outcome, prob = pair
            if isinstance(outcome, bool) or not isinstance(outcome, Integral):
                raise DomainError(f"outcome {outcome!r} is not an integer")
            prob = _as_fraction(prob)
            if not 0 < prob <= 1:
                raise DomainError(f"probability {prob} outside (0, 1]")
            cleaned.append((int(outcome), prob))
        if not cleaned:
            raise DomainError("a gamble table needs at least one entry")
        total = sum(p for _, p in cleaned)
        if total != 1:
            raise DomainError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "entries", tuple(cleaned))
        object.__setattr__(self, "label", label)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def outcomes(self) -> list[int]:
        return [m for m, _ in self.entries]

    @property
    def probabilities(self) -> list[Fraction]:
        return [p for _, p in self.entries]

    def normalized(self) -> "GambleTable":
        """Merge duplicate outcomes and sort by outcome."""
        merged: dict[int, Fraction] = OrderedDict()
        for m, p in sorted(self.entries, key=lambda e: e[0]):
            merged[m] = merged.get(m, Fraction(0)) + p
        return GambleTable(merged.items(), label=self.label)

    def format(self) -> str:
        """Render as ``[[-3, 1/2], [-1, 1/4], ...]``."""
        return "[" + ", ".join(f"[{m}, {p}]" for m, p in self.entries) + "]"

    __str__ = format

    def to_json(self) -> str:
        return json.dumps([[m, str(p)] for m, p in self.entries])

    @classmethod
    def from_json(cls, text: str, label: str | None = None) -> "GambleTable":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"table JSON does not parse: {exc}") from None
        if isinstance(data, dict):
            label = data.get("label", label)
            data = data.get("entries")
        if not isinstance(data, list):
            raise DomainError("table JSON must be a list of [outcome, \"num/den\"] pairs")
        return cls(data, label=label)


def st_pete_table(k: int, fee: int = 0) -> GambleTable:
    """Finite St. Petersburg game with ``k`` coin tosses and an entrance fee.

    First Heads at toss ``i`` pays ``2**i``; surviving all ``k`` tosses also
    pays ``2**k``.  The terminal entry appears twice, unmerged.

    >>> st_pete_table(5, 5).format()
    '[[-3, 1/2], [-1, 1/4], [3, 1/8], [11, 1/16], [27, 1/32], [27, 1/32]]'
    """
    if isinstance(k, bool) or not isinstance(k, Integral) or k < 1:
        raise DomainError(f"number of rounds must be a positive integer, got {k!r}")
    if isinstance(fee, bool) or not isinstance(fee, Integral):
        raise DomainError(f"entrance fee must be an integer, got {fee!r}")
    entries = [(2**i - fee, Fraction(1, 2**i)) for i in range(1, k + 1)]
    entries.append((2**k - fee, Fraction(1, 2**k)))
    return GambleTable(entries, label=f"stpete:{k},{fee}")


def st_pete_listing(rows: int, fee: int = 0) -> GambleTable:
    """St. Petersburg table addressed by its number of rows.

    Some listings count table rows rather than coin tosses, so the six-row
    table ``[[2, 1/2], ..., [32, 1/32], [32, 1/32]]`` is ``rows=6``.  This is
    ``st_pete_table(rows - 1, fee)``.
    """
    if isinstance(rows, bool) or not isinstance(rows, Integral) or rows < 2:
        raise DomainError(f"a St. Petersburg listing has at least 2 rows, got {rows!r}")
    return st_pete_table(rows - 1, fee)


def g_family_table(i: int) -> GambleTable:
    """Lose 1 with probability ``(i-1)/i``, win ``i`` with probability ``1/i``."""
    if isinstance(i, bool) or not isinstance(i, Integral) or i < 2:
        raise DomainError(f"G-family index must be an integer >= 2, got {i!r}")
    return GambleTable([(-1, Fraction(i - 1, i)), (i, Fraction(1, i))], label=f"gfamily:{i}")


def expected_value(table: GambleTable) -> Fraction:
    return sum((p * m for m, p in table.entries), Fraction(0))


def variance(table: GambleTable) -> Fraction:
    mu = expected_value(table)
    return sum((p * (m - mu) ** 2 for m, p in table.entries), Fraction(0))


def shot_win_probability(table: GambleTable, strict: bool = True) -> Fraction:
    """Probability that a single play ends ahead (``> 0``) or not behind (``>= 0``)."""
    if strict:
        return sum((p for m, p in table.entries if m > 0), Fraction(0))
    return sum((p for m, p in table.entries if m >= 0), Fraction(0))
