"""Seeded dry runs compared with the exact probability.

The same seed reproduces the same numbers on every platform; several
workers split the runs into blocks with derived seeds.
"""
import math

from riskcurve import prob_pos, simulate, st_pete_table

game = st_pete_table(5, 5)
exact = float(prob_pos(game, 100))
for seed in (1, 2, 3):
    mean, frac = simulate(game, 100, 1000, seed=seed)
    print(f"seed {seed}: mean total {mean:8.3f}, won in {frac:.3f} of runs")

res = simulate(game, 100, 10_000, seed=1)
se = math.sqrt(exact * (1 - exact) / 10_000)
print(f"\nN = 10000: {res.win_fraction:.4f} vs exact {exact:.4f} ({(res.win_fraction - exact) / se:+.2f} standard errors)")
