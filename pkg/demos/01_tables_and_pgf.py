"""Probability tables and their generating Laurent polynomials.

A finite St. Petersburg game with 5 tosses and a fee of 5 loses money on a
single play three times out of four, yet its mean is positive.  Repeating it
n times corresponds to raising the generating polynomial to the n-th power.
"""
from riskcurve import (
    expected_value,
    g_family_table,
    pgf,
    positive_part,
    power,
    shot_win_probability,
    st_pete_table,
    variance,
)

game = st_pete_table(5, 5)
print("table:         ", game)
print("mean, variance:", expected_value(game), variance(game))
print("one-shot win:  ", shot_win_probability(game))

p = pgf(game)
print("pgf:           ", p)
print("pgf(1):        ", p(1))

# two plays: outcomes add, so exponents add
p2 = power(p, 2)
print("two plays span exponents", p2.min_exponent, "to", p2.max_exponent)
print("P(ahead after 2 plays) =", positive_part(p2))

g10 = g_family_table(10)
print("\nG_10:", g10, "mean", expected_value(g10))
print("pgf(G_10)^2 =", power(pgf(g10), 2))
