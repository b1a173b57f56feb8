"""Positive part of P(x)^n as a contour integral, evaluated numerically.

The sum of positive-exponent coefficients equals the integral of
P(x)^n / (x (x - 1)) over a circle |x| = r with r > 1.  Sampling the circle
uniformly turns the integral into an FFT.
"""
from riskcurve import ContourSpec, contour_positive_part, pgf, positive_part, power, st_pete_table

a = power(pgf(st_pete_table(5, 5)), 100)
exact = float(positive_part(a))
print(f"exact:       {exact:.12f}")
for r in (1.5, 2.0, 4.0):
    v = contour_positive_part(a, ContourSpec(radius=r))
    print(f"r = {r:<4}:    {v:.12f}  (error {v - exact:+.1e})")
