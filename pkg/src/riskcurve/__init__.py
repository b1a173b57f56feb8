"""Exact and approximate win probabilities for repeated gambles.

A gamble is a finite table of integer net gains with rational probabilities.
Playing it ``n`` times, the chance of ending ahead is the sum of positive-
exponent coefficients of the ``n``-th power of its generating Laurent
polynomial.  This package computes that number exactly, approximates it by
the central limit theorem, by contour quadrature and by simulation, and
extends exact sequences cheaply through fitted linear recurrences.
"""
from .errors import DomainError, NotFoundError, NumericalError, RiskCurveError, SingularityError
from .gamble import (
    GambleTable,
    expected_value,
    g_family_table,
    shot_win_probability,
    st_pete_listing,
    st_pete_table,
    variance,
)
from .laurent import LaurentPoly, multiply, pgf, positive_part, power
from .exact import MinRepeats, ProbSeries, as_fraction, format_decimal, min_repeats, prob_pos, prob_pos_sweep
from .clt import CltParams, erf, erfc, min_repeats_clt, normal_cdf, normal_quantile, prob_pos_clt
from .quadrature import ContourSpec, contour_positive_part
from .montecarlo import SimConfig, SimSummary, SplitMix64, XorShift64Star, simulate, simulate_totals
from .recurrence import Recurrence, extend, guess_recurrence, required_terms

__version__ = "0.1.0"

__all__ = [
    "RiskCurveError",
    "DomainError",
    "NumericalError",
    "SingularityError",
    "NotFoundError",
    "GambleTable",
    "st_pete_table",
    "st_pete_listing",
    "g_family_table",
    "expected_value",
    "variance",
    "shot_win_probability",
    "LaurentPoly",
    "pgf",
    "multiply",
    "power",
    "positive_part",
    "ProbSeries",
    "MinRepeats",
    "prob_pos",
    "prob_pos_sweep",
    "min_repeats",
    "format_decimal",
    "as_fraction",
    "CltParams",
    "erf",
    "erfc",
    "normal_cdf",
    "normal_quantile",
    "prob_pos_clt",
    "min_repeats_clt",
    "ContourSpec",
    "contour_positive_part",
    "SimConfig",
    "SimSummary",
    "SplitMix64",
    "XorShift64Star",
    "simulate",
    "simulate_totals",
    "Recurrence",
    "guess_recurrence",
    "extend",
    "required_terms",
]
