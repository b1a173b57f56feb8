"""Fit a linear recurrence with polynomial coefficients, then extend cheaply.

The fit uses exact linear algebra and is re-checked on held-out terms.  A
fitted recurrence is labelled "empirically verified": it is a guess that
survived every check, not a proof.
"""
import time

from riskcurve import extend, format_decimal, g_family_table, guess_recurrence, prob_pos, prob_pos_sweep

g = g_family_table(3)
series = prob_pos_sweep(g, 130)
t0 = time.perf_counter()
rec = guess_recurrence(series, max_order=6, max_degree=10, verify_count=20)
print(f"order {rec.order}, degree {rec.degree}, {rec.status} ({time.perf_counter() - t0:.1f} s)")

t0 = time.perf_counter()
ext = extend(rec, series, 600)
print(f"extended to n = 600 in {time.perf_counter() - t0:.2f} s: {format_decimal(ext[600])}")

direct = prob_pos(g, 600)
print("matches direct computation:", ext[600] == direct)
