"""Numeric cross-check of the positive part via a contour integral.

For a Laurent polynomial ``A`` and any radius ``r > 1``

    A(x)^+ = (1 / 2 pi i) * contour integral over |x| = r of A(x) / (x (x - 1)) dx

because ``1 / (x - 1) = sum_{m >= 1} x**-m`` converges on the contour.  With
``K`` equally spaced nodes the trapezoidal rule reduces to the mean of
``A(x_k) / (x_k - 1)``; its error is the aliased tail of that series, of
order ``r**-K``.  The ``A(x_k)`` values come from one FFT of the scaled
coefficients ``a_j r**j``.

On ``|x| = 1`` the kernel has a pole at ``x = 1``, so the circle must be
strictly larger.  Large positive exponents make ``r**j`` blow up; the guard
below shrinks the radius toward 1 until the scaled coefficients stay within
a few orders of magnitude of the original ones.

This is a validation tool; the exact module stays authoritative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .laurent import LaurentPoly

__all__ = ["ContourSpec", "contour_positive_part"]

# allowed growth of max |a_j| r^j over max |a_j|, as a power of ten
_MAX_GROWTH_DECADES = 4.0
# target aliasing level r**-K
_ALIAS_LOG = math.log(1e-15)
_MAX_SAMPLES = 1 << 22
_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``|x| = radius`` sampled at ``sample_count`` equally spaced nodes.

    ``sample_count`` of ``None`` picks the smallest power of two that is at
    least twice the integrand's exponent span (and large enough for the
    aliasing target at the radius actually used).
    """

    radius: float = 2.0
    sample_count: int | None = None

    def __post_init__(self):
        if not self.radius > 1.0 or not math.isfinite(self.radius):
            raise DomainError(f"contour radius must exceed 1, got {self.radius!r}")
        k = self.sample_count
        if k is not None and (k < 2 or k & (k - 1)):
            raise DomainError(f"sample_count must be a power of two >= 2, got {k!r}")


def _log_abs_coefficients(a: LaurentPoly) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exponents, signs and natural logs of |coefficients| without overflow."""
    log_den = math.log(a.denominator)
    exps, signs, logs = [], [], []
    for j, c in enumerate(a.numerators):
        if c:
            exps.append(a.min_exponent + j)
            signs.append(1.0 if c > 0 else -1.0)
            logs.append(math.log(abs(c)) - log_den)
    return np.array(exps, dtype=np.int64), np.array(signs), np.array(logs)


def _growth_ok(exps, logs, r: float) -> bool:
    pos = exps > 0
    if not pos.any():
        return True
    peak = (logs[pos] + exps[pos] * math.log(r)).max()
    return peak - logs.max() <= _MAX_GROWTH_DECADES * math.log(10)


def _choose_radius(exps, logs, radius: float, samples: int) -> float | None:
    """Largest radius in ``(1, radius]`` with bounded growth and aliasing ``r**-K < 1e-15``.

    Returns ``None`` when the two requirements cannot both be met.
    """
    r_min = math.exp(-_ALIAS_LOG / samples)
    if r_min > radius:
        return None
    r = radius
    while not _growth_ok(exps, logs, r):
        r = 1.0 + (r - 1.0) / 2.0
        if r < r_min:
            return r_min if _growth_ok(exps, logs, r_min) else None
    return r


def contour_positive_part(a: LaurentPoly, spec: ContourSpec | None = None) -> float:
    """Trapezoidal evaluation of the contour integral for ``A(x)^+`` (strict).

    The node count must be at least twice the exponent span and exceed the
    largest exponent, otherwise positive powers alias onto the constant term.
    """
    spec = spec or ContourSpec()
    if a.is_zero():
        raise DomainError("contour integral of the zero polynomial is not defined here")
    exps, signs, logs = _log_abs_coefficients(a)
    lo, hi = int(exps.min()), int(exps.max())
    needed = max(2 * (hi - lo), hi + 1, 2)
    if spec.sample_count is not None:
        if spec.sample_count < needed:
            raise DomainError(f"sample_count {spec.sample_count} below the required {needed}")
        samples = spec.sample_count
    else:
        samples = max(64, 1 << (needed - 1).bit_length())
    while True:
        r = _choose_radius(exps, logs, spec.radius, samples)
        if r is not None:
            break
        if spec.sample_count is not None or samples >= _MAX_SAMPLES:
            raise NumericalError(
                f"no radius in (1, {spec.radius}] keeps coefficient growth and aliasing "
                f"bounded with {samples} samples"
            )
        samples *= 2
    # A(r w^k) = w^(lo k) * sum_e a_e r^e w^((e - lo) k),  w = exp(2 pi i / K)
    scaled = np.zeros(samples)
    np.add.at(scaled, exps - lo, signs * np.exp(logs + exps * math.log(r)))
    theta = 2.0 * np.pi * np.arange(samples) / samples
    nodes = r * np.exp(1j * theta)
    values = np.fft.ifft(scaled) * samples * np.exp(1j * lo * theta)
    result = np.mean(values / (nodes - 1.0))
    if abs(result.imag) > _IMAG_TOL:
        raise NumericalError(f"contour integral has imaginary residue {result.imag:.3e}")
    return float(result.real)
