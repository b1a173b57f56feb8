"""Exact Laurent polynomials over the rationals.

Coefficients are stored densely from ``min_exponent`` upward as integer
numerators over one shared positive denominator.  Every public accessor
hands out :class:`fractions.Fraction` values; the scaled-integer layout only
keeps the convolution inner loop in integer arithmetic.

Large products of nonnegative polynomials go through Kronecker substitution:
each polynomial is packed into one big integer with fixed-width slots, and
the product is a single ``gmpy2`` multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping

import gmpy2
import numpy as np

from .errors import DomainError
from .gamble import GambleTable

__all__ = ["LaurentPoly", "pgf", "multiply", "power", "positive_part"]

# Below this many nonzero terms in the shorter factor, shift-and-add wins.
_SPARSE_TERMS = 12
# Below this many slots in the shorter factor, schoolbook wins for signed input.
_SCHOOLBOOK_LEN = 64


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class LaurentPoly:
    """Exact Laurent polynomial ``sum_j c_j x**(min_exponent + j)``.

    Parameters
    ----------
    coefficients : iterable of rationals
        Dense coefficients, lowest exponent first.
    min_exponent : int
        Exponent of the first coefficient.

    The stored form is canonical: no leading or trailing zeros, and the zero
    polynomial has no coefficients (its ``min_exponent`` is 0).
    """

    __slots__ = ("_min", "_num", "_den")

    def __init__(self, coefficients: Iterable = (), min_exponent: int = 0):
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coefficients]
        den = reduce(_lcm, (c.denominator for c in coeffs), 1)
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(int(min_exponent), nums, den)

    @classmethod
    def _scaled(cls, min_exponent: int, nums, den: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._set(min_exponent, nums, den)
        return obj

    def _set(self, min_exponent: int, nums, den: int) -> None:
        nums = list(nums)
        lo, hi = 0, len(nums)
        while lo < hi and nums[lo] == 0:
            lo += 1
        while hi > lo and nums[hi - 1] == 0:
            hi -= 1
        nums = nums[lo:hi]
        if not nums:
            self._min, self._num, self._den = 0, (), 1
            return
        if den < 0:
            den, nums = -den, [-c for c in nums]
        g = reduce(gcd, nums, den)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self._min = min_exponent + lo
        self._num = tuple(int(c) for c in nums)
        self._den = int(den)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]]) -> "LaurentPoly":
        """Build from ``{exponent: coefficient}``; repeated exponents accumulate."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), Fraction(0)) + Fraction(c)
        if not acc:
            return cls()
        lo, hi = min(acc), max(acc)
        return cls([acc.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> "LaurentPoly":
        return cls([coefficient], exponent)

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls([1], 0)

    @property
    def min_exponent(self) -> int:
        return self._min

    @property
    def max_exponent(self) -> int:
        return self._min + len(self._num) - 1

    @property
    def span(self) -> int:
        """``max_exponent - min_exponent`` (0 for the zero polynomial)."""
        return max(len(self._num) - 1, 0)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def denominator(self) -> int:
        """Least common denominator of all coefficients."""
        return self._den

    @property
    def numerators(self) -> tuple[int, ...]:
        """Integer coefficients of ``denominator * self``."""
        return self._num

    def is_zero(self) -> bool:
        return not self._num

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending exponent order."""
        return [(self._min + j, Fraction(c, self._den)) for j, c in enumerate(self._num) if c]

    def __getitem__(self, exponent: int) -> Fraction:
        j = exponent - self._min
        if 0 <= j < len(self._num):
            return Fraction(self._num[j], self._den)
        return Fraction(0)

    def __call__(self, x):
        """Evaluate at ``x`` (exact for rationals, complex/float otherwise)."""
        if self.is_zero():
            return 0 * x
        acc = 0
        for c in reversed(self._num):
            acc = acc * x + c
        if isinstance(x, (int, Fraction)):
            return Fraction(acc) * Fraction(x) ** self._min / self._den
        return acc * x**self._min / self._den

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return (self._min, self._num, self._den) == (other._min, other._num, other._den)
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._min, self._num, self._den))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._scaled(self._min, [-c for c in self._num], self._den)

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly([other])
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        den = _lcm(self._den, other._den)
        lo = min(self._min, other._min)
        hi = max(self.max_exponent, other.max_exponent)
        out = [0] * (hi - lo + 1)
        for p in (self, other):
            f = den // p._den
            off = p._min - lo
            for j, c in enumerate(p._num):
                out[off + j] += c * f
        return LaurentPoly._scaled(lo, out, den)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly([other])
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly([other])
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        return power(self, n)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*x^{e}" for e, c in self.terms())


def pgf(table: GambleTable) -> LaurentPoly:
    """Probability generating function ``sum p_i x**M_i`` of a gamble table."""
    return LaurentPoly.from_terms(table.entries)


# ---------------------------------------------------------------------------
# integer convolution kernels


def _pack(nums, width: int) -> gmpy2.mpz:
    nbytes = width // 8
    buf = b"".join(int(c).to_bytes(nbytes, "little") for c in nums)
    return gmpy2.mpz(int.from_bytes(buf, "little"))


def _unpack(x: gmpy2.mpz, width: int, count: int) -> list[int]:
    nbytes = width // 8
    raw = int(x).to_bytes(nbytes * count, "little")
    return [int.from_bytes(raw[j * nbytes:(j + 1) * nbytes], "little") for j in range(count)]


def _slot_width(bound: int) -> int:
    """Slot width in bits (multiple of 8) holding values ``<= bound`` with one spare bit."""
    return ((int(bound).bit_length() + 1 + 7) // 8) * 8


def _kronecker_nonneg(a, b) -> list[int]:
    bound = max(a) * max(b) * min(len(a), len(b))
    w = _slot_width(bound)
    return _unpack(_pack(a, w) * _pack(b, w), w, len(a) + len(b) - 1)


def _sparse_convolve(a, b) -> list[int]:
    # b has few nonzero terms
    out = np.zeros(len(a) + len(b) - 1, dtype=object)
    va = np.array(a, dtype=object)
    for j, c in enumerate(b):
        if c:
            out[j:j + len(a)] += c * va
    return [int(c) for c in out]


def _schoolbook(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _convolve(a, b) -> list[int]:
    if not a or not b:
        return []
    if sum(1 for c in a if c) < sum(1 for c in b if c):
        a, b = b, a
    if sum(1 for c in b if c) <= _SPARSE_TERMS:
        return _sparse_convolve(a, b)
    if min(a) >= 0 and min(b) >= 0:
        return _kronecker_nonneg(a, b)
    if min(len(a), len(b)) <= _SCHOOLBOOK_LEN:
        return _schoolbook(a, b)
    # signed inputs: split into nonnegative parts
    ap = [max(c, 0) for c in a]
    an = [max(-c, 0) for c in a]
    bp = [max(c, 0) for c in b]
    bn = [max(-c, 0) for c in b]

    def part(x, y):
        if not any(x) or not any(y):
            return [0] * (len(a) + len(b) - 1)
        return _kronecker_nonneg(x, y)

    pp, pn, np_, nn = part(ap, bp), part(ap, bn), part(an, bp), part(an, bn)
    return [w - x - y + z for w, x, y, z in zip(pp, pn, np_, nn)]


def multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product; the result's ``min_exponent`` is the sum of the factors'."""
    if a.is_zero() or b.is_zero():
        return LaurentPoly()
    nums = _convolve(a.numerators, b.numerators)
    out = LaurentPoly._scaled(a.min_exponent + b.min_exponent, nums, a.denominator * b.denominator)
    assert out.span == a.span + b.span, "degree additivity violated"
    return out


# ---------------------------------------------------------------------------
# lattice compression: A = x**m * Q(x**g) / den


def _compress(a: LaurentPoly) -> tuple[int, int, list[int]]:
    """Return ``(m, g, q)`` with ``a.numerators`` equal to ``x**m * Q(x**g)``."""
    offsets = [j for j, c in enumerate(a.numerators) if c]
    g = reduce(gcd, offsets, 0) or 1
    return a.min_exponent, g, list(a.numerators[::g])


def _expand(m: int, g: int, q, den: int) -> LaurentPoly:
    if g == 1:
        return LaurentPoly._scaled(m, q, den)
    dense = [0] * ((len(q) - 1) * g + 1)
    dense[::g] = q
    return LaurentPoly._scaled(m, dense, den)


def _int_power(q: list[int], n: int) -> list[int]:
    """``Q**n`` for an integer polynomial by binary exponentiation."""
    if len(q) == 1:
        return [q[0] ** n]
    if min(q) >= 0:
        x, w = _packed_power(q, n)
        return _unpack(x, w, (len(q) - 1) * n + 1)
    result = [1]
    base = list(q)
    while n:
        if n & 1:
            result = _convolve(result, base)
        n >>= 1
        if n:
            base = _convolve(base, base)
    return result


def _packed_power(q: list[int], n: int) -> tuple[gmpy2.mpz, int]:
    """Kronecker-packed ``Q**n`` for nonnegative ``Q`` and its slot width.

    Every coefficient of ``Q**k`` (``k <= n``) is at most ``Q(1)**n``, so one
    fixed width serves all intermediate squarings.
    """
    w = _slot_width(sum(q) ** n)
    return gmpy2.mpz(_pack(q, w)) ** n, w


def power(a: LaurentPoly, n: int) -> LaurentPoly:
    """``a**n`` for ``n >= 0`` by binary exponentiation (``a**0 == 1``)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"exponent must be a nonnegative integer, got {n!r}")
    if n == 0:
        return LaurentPoly.one()
    if a.is_zero():
        return LaurentPoly()
    m, g, q = _compress(a)
    return _expand(m * n, g, _int_power(q, n), a.denominator**n)


def positive_part(a: LaurentPoly, strict: bool = True) -> Fraction:
    """Sum of coefficients on exponents ``> 0`` (strict) or ``>= 0``."""
    start = (1 if strict else 0) - a.min_exponent
    start = max(start, 0)
    return Fraction(sum(a.numerators[start:]), a.denominator)


def _first_slot(m: int, g: int, n: int, strict: bool) -> int:
    """Index of the first slot of ``Q**n`` whose exponent ``m*n + g*j`` counts."""
    base = m * n
    if strict:
        # m*n + g*j > 0
        return max((-base) // g + 1, 0)
    return max(-((base) // g), 0)


def positive_part_of_power(a: LaurentPoly, n: int, strict: bool = True) -> Fraction:
    """``positive_part(power(a, n), strict)`` without materializing the power.

    For nonnegative ``a`` the packed power is reduced directly: the sum of
    slots from index ``t`` upward is ``(X >> t*w) mod (2**w - 1)`` because
    the total of all slots stays below ``2**w - 1``.
    """
    if n == 0:
        return positive_part(LaurentPoly.one(), strict)
    if a.is_zero():
        return Fraction(0)
    m, g, q = _compress(a)
    if min(q) < 0 or len(q) == 1:
        return positive_part(power(a, n), strict)
    x, w = _packed_power(q, n)
    t = _first_slot(m, g, n, strict)
    slots = (len(q) - 1) * n + 1
    if t >= slots:
        total = 0
    else:
        total = int((x >> (t * w)) % ((gmpy2.mpz(1) << w) - 1))
    return Fraction(total, a.denominator**n)


def positive_part_sweep(a: LaurentPoly, n_max: int, strict: bool = True) -> list[Fraction]:
    """``positive_part(a**n)`` for ``n = 1..n_max``, one base multiplication per step."""
    if a.is_zero():
        return [Fraction(0)] * n_max
    m, g, q = _compress(a)
    den = a.denominator
    base_terms = [(j, c) for j, c in enumerate(q) if c]
    cur = np.array([1], dtype=object)
    out = []
    scale = 1
    for n in range(1, n_max + 1):
        nxt = np.zeros(len(cur) + len(q) - 1, dtype=object)
        for j, c in base_terms:
            nxt[j:j + len(cur)] += c * cur
        cur = nxt
        scale *= den
        t = _first_slot(m, g, n, strict)
        out.append(Fraction(int(sum(cur[t:])) if t < len(cur) else 0, scale))
    return out
