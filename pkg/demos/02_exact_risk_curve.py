"""The exact risk curve and the smallest safe number of repeats.

Probabilities are exact rationals; the decimal shown is rounded half-even.
"""
from fractions import Fraction

from riskcurve import format_decimal, g_family_table, min_repeats, prob_pos, prob_pos_sweep, st_pete_table

game = st_pete_table(5, 5)
p100 = prob_pos(game, 100)
print(f"P(ahead after 100 plays) = {p100}")
print(f"                         ~ {format_decimal(p100)}")
for n in (200, 1000):
    print(f"n = {n:>4}: {format_decimal(prob_pos(game, n))}")

# the curve is not monotone: G_2 dips at n = 3
print("\nG_2, n = 1..8:", [str(v) for v in prob_pos_sweep(g_family_table(2), 8).probabilities])

# so the solver asks for the target to hold over a window of repeats
res = min_repeats(game, Fraction(1, 10), window=10, horizon=300)
print(f"\nsmallest n keeping P >= 0.9 for 11 consecutive n: {res.n}")
print(res.certificate)

for n in (100, 500, 1000):
    print(f"G_10 at n = {n:>4}: {format_decimal(prob_pos(g_family_table(10), n))}")
