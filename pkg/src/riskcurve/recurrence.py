"""Linear recurrences with polynomial coefficients, found by guess-and-verify.

A recurrence of order ``r`` is

    c_0(n) a(n) + c_1(n) a(n+1) + ... + c_r(n) a(n+r) = 0

with polynomial ``c_j``.  Fitting fixes an order ``r`` and degree ``d``,
writes every known index ``n`` as one linear equation in the
``(r+1)(d+1)`` unknown polynomial coefficients, and looks for a nonzero
exact null vector.  Cells are tried in order of increasing ``r`` and then
``d``; the first null vector that also annihilates the held-out tail wins.

Nothing here is proven: a recurrence that holds on every fitted and held-out
index is reported as *empirically verified*, and extension re-checks every
new value for exact divisibility and membership in ``[0, 1]``.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

import numpy as np

from .errors import DomainError, NotFoundError, NumericalError, SingularityError
from .exact import ProbSeries
from .laurent import pgf
from .linalg import PRIMES, nullspace_vector_bareiss, nullspace_vector_modular, rref_mod

__all__ = ["Recurrence", "guess_recurrence", "extend", "required_terms"]

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 8
DEFAULT_MAX_DEGREE = 8
DEFAULT_VERIFY_COUNT = 20
# above this many unknowns the multimodular solver replaces Bareiss
_BAREISS_LIMIT = 64
_STATUS = "empirically verified"


def _poly_eval(coeffs: Sequence[int | Fraction], n: int):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class Recurrence:
    """``sum_j coeffs[j](n) * a(n + j) = 0`` for every ``n >= offset``.

    ``coeffs[j]`` lists the coefficients of ``c_j`` in ascending powers of
    ``n``; ``initial_values`` are ``a(offset), ..., a(offset + order - 1)``.
    """

    coeffs: tuple[tuple[Fraction, ...], ...]
    initial_values: tuple[Fraction, ...]
    offset: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise DomainError("a recurrence needs at least two coefficient polynomials")
        if not any(self.coeffs[-1]):
            raise DomainError("leading coefficient polynomial is zero")
        if len(self.initial_values) != self.order:
            raise DomainError(f"expected {self.order} initial values, got {len(self.initial_values)}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(len(c) for c in self.coeffs) - 1

    @property
    def status(self) -> str:
        return _STATUS

    def coefficients_at(self, n: int) -> list[Fraction]:
        return [Fraction(_poly_eval(c, n)) for c in self.coeffs]

    def residual(self, values: Sequence[Fraction], n: int) -> Fraction:
        """Left-hand side at ``n`` given ``values[i] = a(offset + i)``."""
        i = n - self.offset
        return sum(
            (c * values[i + j] for j, c in enumerate(self.coefficients_at(n))),
            Fraction(0),
        )

    def annihilates(self, values: Sequence[Fraction], start: int | None = None) -> bool:
        """Exact check over every index whose window lies inside ``values``."""
        first = self.offset if start is None else start
        last = self.offset + len(values) - 1 - self.order
        return all(self.residual(values, n) == 0 for n in range(first, last + 1))

    def to_json(self) -> str:
        return json.dumps(
            {
                "order": self.order,
                "degree": self.degree,
                "offset": self.offset,
                "coefficients": [[str(c) for c in poly] for poly in self.coeffs],
                "initial_values": [str(v) for v in self.initial_values],
                "status": self.status,
                "meta": self.meta,
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "Recurrence":
        data = json.loads(text)
        return cls(
            tuple(tuple(Fraction(c) for c in poly) for poly in data["coefficients"]),
            tuple(Fraction(v) for v in data["initial_values"]),
            int(data.get("offset", 1)),
            data.get("meta") or {},
        )

    def __str__(self) -> str:
        def poly(c):
            terms = [f"{v}*n^{k}" if k else str(v) for k, v in enumerate(c) if v]
            return "(" + " + ".join(terms or ["0"]) + ")"

        body = " + ".join(f"{poly(c)}*a(n+{j})" for j, c in enumerate(self.coeffs))
        return f"{body} = 0  [order {self.order}, degree {self.degree}, {self.status}]"


def required_terms(max_order: int, max_degree: int, verify_count: int) -> int:
    """Series length needed for a given search box."""
    return (max_order + 1) * (max_degree + 1) + max_order + verify_count


def _contiguous(series: ProbSeries) -> tuple[int, list[Fraction]]:
    ns = [n for n, _ in series.values]
    if not ns:
        raise DomainError("empty series")
    if ns != list(range(ns[0], ns[0] + len(ns))):
        raise DomainError("series indices must be consecutive")
    return ns[0], [p for _, p in series.values]


def _integer_rows(values: list[Fraction], offset: int, r: int, d: int) -> list[list[int]]:
    rows = []
    for i in range(len(values) - r):
        window = values[i:i + r + 1]
        scale = reduce(lambda u, v: u // gcd(u, v) * v, (v.denominator for v in window), 1)
        scaled = [v.numerator * (scale // v.denominator) for v in window]
        n = offset + i
        powers = [n**k for k in range(d + 1)]
        rows.append([s * pk for s in scaled for pk in powers])
    return rows


class _ModularCache:
    """Sequence values and index powers reduced modulo each prime."""

    def __init__(self, values: list[Fraction], offset: int):
        self.values = values
        self.offset = offset
        self._vals: dict[int, np.ndarray | None] = {}

    def values_mod(self, p: int) -> np.ndarray | None:
        if p not in self._vals:
            try:
                self._vals[p] = np.array(
                    [v.numerator % p * pow(v.denominator, -1, p) % p for v in self.values],
                    dtype=np.int64,
                )
            except ValueError:  # p divides a denominator
                self._vals[p] = None
        return self._vals[p]

    def matrix(self, p: int, r: int, d: int, rows: int) -> np.ndarray | None:
        vals = self.values_mod(p)
        if vals is None:
            return None
        ns = (np.arange(rows, dtype=np.int64) + self.offset) % p
        pw = np.ones((rows, d + 1), dtype=np.int64)
        for k in range(1, d + 1):
            pw[:, k] = (pw[:, k - 1] * ns) % p
        shifted = np.stack([vals[j:j + rows] for j in range(r + 1)], axis=1)
        return ((shifted[:, :, None] * pw[:, None, :]) % p).reshape(rows, (r + 1) * (d + 1))


def _unpack_vector(vec: list[int], r: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    polys = []
    for j in range(r + 1):
        c = list(vec[j * (d + 1):(j + 1) * (d + 1)])
        polys.append(tuple(Fraction(v) for v in c))
    return tuple(polys)


def _trim(poly: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    c = list(poly)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def guess_recurrence(
    series: ProbSeries,
    max_order: int = DEFAULT_MAX_ORDER,
    max_degree: int = DEFAULT_MAX_DEGREE,
    verify_count: int = DEFAULT_VERIFY_COUNT,
) -> Recurrence:
    """Smallest (order, degree) recurrence fitting all but the last ``verify_count`` terms.

    The candidate must also annihilate the held-out terms exactly.  Raises
    :class:`NotFoundError` if no cell of the search box yields one.
    """
    if max_order < 1 or max_degree < 0 or verify_count < 1:
        raise DomainError("need max_order >= 1, max_degree >= 0, verify_count >= 1")
    offset, values = _contiguous(series)
    need = required_terms(max_order, max_degree, verify_count)
    if len(values) < need:
        raise DomainError(
            f"search box order<={max_order}, degree<={max_degree} with {verify_count} "
            f"held-out terms needs {need} terms, series has {len(values)}"
        )
    fit = values[: len(values) - verify_count]
    cache = _ModularCache(fit, offset)
    screen_primes = PRIMES[:2]

    def full_rank(r: int, d: int) -> bool:
        # full column rank modulo a prime implies it over the rationals
        rows = len(fit) - r
        for p in screen_primes:
            m = cache.matrix(p, r, d, rows)
            if m is not None and len(rref_mod(m, p)[1]) == (r + 1) * (d + 1):
                return True
        return False

    for r in range(1, max_order + 1):
        top = max((d for d in range(max_degree + 1) if (r + 1) * (d + 1) <= len(fit) - r), default=None)
        # lower degrees use a subset of the columns
        if top is None or full_rank(r, top):
            continue
        for d in range(top + 1):
            unknowns = (r + 1) * (d + 1)
            rows = len(fit) - r
            if d < top and full_rank(r, d):
                continue

            def exact_check(vec, r=r, d=d):
                polys = _unpack_vector(vec, r, d)
                if not any(polys[-1]) or not any(polys[0]):
                    return False
                rec = Recurrence(polys, tuple(values[:r]), offset)
                return rec.annihilates(values)

            if unknowns <= _BAREISS_LIMIT:
                vec = nullspace_vector_bareiss(_integer_rows(fit, offset, r, d))
                if vec is None or not exact_check(vec):
                    continue
            else:
                vec = nullspace_vector_modular(
                    lambda p, r=r, d=d, rows=rows: cache.matrix(p, r, d, rows), exact_check
                )
                if vec is None:
                    continue
            polys = tuple(_trim(c) for c in _unpack_vector(vec, r, d))
            LOGGER.info("recurrence found: order %d, degree %d", r, d)
            return Recurrence(
                polys,
                tuple(values[:r]),
                offset,
                {
                    "fit_terms": len(fit),
                    "fit_range": [offset, offset + len(fit) - 1],
                    "verified_range": [offset, offset + len(values) - 1],
                    "held_out": verify_count,
                    "search_box": [max_order, max_degree],
                    "status": _STATUS,
                },
            )
    raise NotFoundError(
        f"no recurrence with order <= {max_order} and degree <= {max_degree} "
        f"fits {len(fit)} terms and the {verify_count} held-out terms"
    )


def _common_base(series: ProbSeries, values: list[Fraction], offset: int) -> int | None:
    """``D`` with every ``a(n) * D**n`` integral, taken from the gamble, if it works."""
    den = pgf(series.gamble).denominator
    if all((v * den ** (offset + i)).denominator == 1 for i, v in enumerate(values)):
        return den
    return None


def extend(rec: Recurrence, series: ProbSeries, n_target: int) -> ProbSeries:
    """Extend ``series`` to ``n_target`` by iterating the recurrence exactly.

    The series must start at ``rec.offset`` and already satisfy ``rec``.
    Raises :class:`SingularityError` if the leading coefficient vanishes on
    the way and :class:`NumericalError` if a new value is not exact or leaves
    ``[0, 1]`` (both signal a wrong recurrence).
    """
    offset, values = _contiguous(series)
    if offset != rec.offset:
        raise DomainError(f"series starts at {offset}, recurrence at {rec.offset}")
    if len(values) < rec.order:
        raise DomainError(f"need at least {rec.order} known terms to extend")
    if list(values[: rec.order]) != list(rec.initial_values):
        raise DomainError("series does not match the recurrence's initial values")
    if not rec.annihilates(values):
        raise DomainError("series does not satisfy the recurrence")
    last = offset + len(values) - 1
    if n_target <= last:
        return ProbSeries(series.gamble, series.strict, series.values[: n_target - offset + 1], dict(series.meta))

    r = rec.order
    den = reduce(lambda u, v: u // gcd(u, v) * v, (c.denominator for p in rec.coeffs for c in p), 1)
    icoeffs = [[int(c * den) for c in p] for p in rec.coeffs]
    base = _common_base(series, values, offset)
    new: list[Fraction] = []

    if base is not None:
        # integers b(n) = a(n) * base**n; c_j(n) base**(r-j) b(n+j) summed over j
        window = [int(v * base ** (offset + len(values) - r + i)) for i, v in enumerate(values[-r:])]
        weights = [base ** (r - j) for j in range(r)]
        for m in range(last + 1, n_target + 1):
            n = m - r
            lead = _poly_eval(icoeffs[r], n)
            if lead == 0:
                raise SingularityError(n)
            acc = sum(_poly_eval(icoeffs[j], n) * weights[j] * window[j] for j in range(r))
            q, rem = divmod(-acc, lead)
            if rem:
                raise NumericalError(f"non-integral scaled value at n = {m}; recurrence is wrong")
            if not 0 <= q <= base**m:
                raise NumericalError(f"extended value at n = {m} leaves [0, 1]; recurrence is wrong")
            window = window[1:] + [q]
            new.append(Fraction(q, base**m))
    else:
        window = list(values[-r:])
        for m in range(last + 1, n_target + 1):
            n = m - r
            cs = [Fraction(_poly_eval(p, n)) for p in icoeffs]
            if cs[r] == 0:
                raise SingularityError(n)
            v = -sum((cs[j] * window[j] for j in range(r)), Fraction(0)) / cs[r]
            if not 0 <= v <= 1:
                raise NumericalError(f"extended value at n = {m} leaves [0, 1]; recurrence is wrong")
            window = window[1:] + [v]
            new.append(v)

    meta = dict(series.meta)
    meta.update({"method": "recurrence", "extended_from": last, "recurrence_status": _STATUS})
    return ProbSeries(
        series.gamble,
        series.strict,
        series.values + tuple(zip(range(last + 1, n_target + 1), new)),
        meta,
    )
