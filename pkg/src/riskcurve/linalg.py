"""Exact nullspace computations for integer and rational matrices.

Two routes produce the same canonical vector (the reduced-row-echelon basis
vector of the first free column, scaled to primitive integers):

* :func:`nullspace_vector_bareiss` runs fraction-free Gaussian elimination
  over the integers followed by exact back substitution.
* :func:`nullspace_vector_modular` eliminates modulo word-size primes,
  combines the residues with the Chinese remainder theorem and recovers the
  rationals by reconstruction.  The caller must verify the result exactly;
  a wrong reconstruction is detected there and more primes are added.

Modular rank also serves as a cheap screen: full column rank modulo a prime
implies full column rank over the rationals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "PRIMES",
    "rref_mod",
    "nullspace_vector_bareiss",
    "nullspace_vector_modular",
    "rational_reconstruction",
    "primitive",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(start: int = (1 << 31) - 1):
    p = start
    while True:
        if _is_prime(p):
            yield p
        p -= 2


# products of two residues must fit in int64
PRIMES = [p for p, _ in zip(_prime_stream(), range(64))]


def primitive(vec: Sequence[int]) -> list[int]:
    """Divide by the content and make the last nonzero entry positive."""
    g = reduce(gcd, vec, 0)
    if g == 0:
        return list(vec)
    out = [v // g for v in vec]
    last = next(v for v in reversed(out) if v)
    return [-v for v in out] if last < 0 else out


def rref_mod(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form modulo ``p`` and the pivot columns."""
    m = np.array(mat, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        f = m[:, c].copy()
        f[r] = 0
        nzr = np.flatnonzero(f)
        if nzr.size:
            m[nzr] = (m[nzr] - (f[nzr, None] * m[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _first_free(pivots: list[int], cols: int) -> int | None:
    pset = set(pivots)
    return next((c for c in range(cols) if c not in pset), None)


def nullspace_vector_bareiss(rows: Sequence[Sequence[int]]) -> list[int] | None:
    """Canonical integer null vector by fraction-free elimination, or ``None``."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return None
    m, c = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(c):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[col]
        for i in range(r + 1, m):
            row = a[i]
            f = row[col]
            if f:
                for k in range(col + 1, c):
                    row[k] = (pv * row[k] - f * pr[k]) // prev
            else:
                for k in range(col + 1, c):
                    row[k] = (pv * row[k]) // prev
            row[col] = 0
        prev = pv
        pivots.append(col)
        r += 1
    free = _first_free(pivots, c)
    if free is None:
        return None
    x: list[Fraction] = [Fraction(0)] * c
    x[free] = Fraction(1)
    for t in range(len(pivots) - 1, -1, -1):
        pc = pivots[t]
        s = sum((a[t][k] * x[k] for k in range(pc + 1, c) if x[k]), Fraction(0))
        x[pc] = -s / a[t][pc]
    den = reduce(lambda u, v: u // gcd(u, v) * v, (q.denominator for q in x), 1)
    return primitive([int(q * den) for q in x])


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """Find ``u/v`` with ``u = a*v (mod m)`` and ``|u|, v <= sqrt(m/2)``."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def nullspace_vector_modular(
    matrix_mod: Callable[[int], np.ndarray],
    verify: Callable[[list[int]], bool],
    max_primes: int = 2000,
) -> list[int] | None:
    """Canonical null vector from residues modulo many primes.

    ``matrix_mod(p)`` returns the matrix reduced modulo ``p``;
    ``verify(vec)`` must check a candidate exactly.  Returns ``None`` when
    the matrix has full column rank.
    """
    ref_pivots: list[int] | None = None
    residues: list[tuple[int, np.ndarray]] = []
    next_try = 2
    for p in _prime_stream():
        if len(residues) >= max_primes:
            break
        mat = matrix_mod(p)
        if mat is None:
            continue
        red, pivots = rref_mod(mat, p)
        cols = mat.shape[1]
        free = _first_free(pivots, cols)
        if free is None:
            return None
        if ref_pivots is None or len(pivots) > len(ref_pivots) or (
            len(pivots) == len(ref_pivots) and pivots < ref_pivots
        ):
            # better rank profile: earlier residues came from unlucky primes
            ref_pivots = pivots
            residues = []
            next_try = 2
        elif pivots != ref_pivots:
            continue
        vec = np.zeros(cols, dtype=object)
        vec[free] = 1
        for t, pc in enumerate(pivots):
            vec[pc] = int(-red[t, free]) % p
        residues.append((p, vec))
        if len(residues) >= next_try:
            next_try = max(next_try + 1, int(next_try * 1.5))
            cand = _combine(residues)
            if cand is not None and verify(cand):
                return cand
    return None


def _combine(residues: list[tuple[int, np.ndarray]]) -> list[int] | None:
    modulus = 1
    acc = np.zeros(len(residues[0][1]), dtype=object)
    for p, vec in residues:
        # CRT: acc (mod modulus), vec (mod p)
        inv = pow(modulus % p, -1, p)
        diff = ((vec - acc) % p) * inv % p
        acc = acc + modulus * diff
        modulus *= p
    fracs = []
    for v in acc:
        q = rational_reconstruction(int(v), modulus)
        if q is None:
            return None
        fracs.append(q)
    den = reduce(lambda u, v: u // gcd(u, v) * v, (q.denominator for q in fracs), 1)
    return primitive([int(q * den) for q in fracs])
