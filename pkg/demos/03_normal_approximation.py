"""Central limit approximation against the exact curve for G_10.

The approximation is Phi(mu * sqrt(n) / sigma).  It is poor at n = 100 and
good by n = 10000.
"""
from riskcurve import CltParams, format_decimal, g_family_table, min_repeats_clt, prob_pos, prob_pos_clt

g = g_family_table(10)
params = CltParams.from_table(g)
print(f"mu = {params.mu}, sigma^2 = {params.sigma2}")
print(f"{'n':>6} {'exact':>14} {'normal':>14} {'gap':>10}")
for n in (100, 1000, 10000):
    exact = prob_pos(g, n)
    approx = prob_pos_clt(g, n)
    print(f"{n:>6} {format_decimal(exact):>14} {approx:>14.10f} {approx - float(exact):>+10.6f}")

for eps in (0.5, 0.05, 0.0013):
    print(f"normal approximation needs n = {min_repeats_clt(g, eps)} for epsilon = {eps}")
