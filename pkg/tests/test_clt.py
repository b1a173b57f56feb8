import math
from fractions import Fraction

import mpmath
import pytest

from riskcurve import (
    CltParams,
    DomainError,
    GambleTable,
    erf,
    erfc,
    g_family_table,
    min_repeats_clt,
    normal_cdf,
    normal_quantile,
    prob_pos,
    prob_pos_clt,
    st_pete_table,
)

from _oracles import bisect_int

mpmath.mp.dps = 40
GRID = [i / 16 for i in range(-112, 113)]


class TestErf:
    def test_special_values(self):
        assert erf(0.0) == 0.0
        assert abs(erf(1.0) - 0.842700792949715) < 1e-12
        for x in (6.0, 7.5, 30.0, math.inf):
            assert abs(erf(x) - 1.0) < 1e-12
            assert abs(erf(-x) + 1.0) < 1e-12

    def test_against_mpmath(self):
        worst = max(abs(erf(x) - float(mpmath.erf(x))) for x in GRID)
        assert worst < 1e-12

    def test_odd(self):
        for x in GRID:
            assert abs(erf(-x) + erf(x)) < 1e-13

    def test_erfc_relative_accuracy_in_tail(self):
        for x in (3.5, 5.0, 8.0, 12.0, 20.0):
            ref = float(mpmath.erfc(x))
            assert abs(erfc(x) - ref) <= 1e-9 * ref

    def test_erfc_complements(self):
        for x in GRID:
            assert abs(erf(x) + erfc(x) - 1.0) < 1e-12


class TestNormal:
    def test_cdf(self):
        for z in (-4.0, -1.0, 0.0, 0.5, 2.0, 3.3):
            assert abs(normal_cdf(z) - float(mpmath.ncdf(z))) < 1e-12

    def test_quantile_inverts(self):
        for p in (0.001, 0.05, 0.5, 0.8, 0.95, 0.9987784576):
            z = normal_quantile(p)
            assert abs(z - float(mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(p) - 1))) < 1e-9

    def test_quantile_domain(self):
        with pytest.raises(DomainError):
            normal_quantile(1.0)


class TestProbPosClt:
    @pytest.mark.parametrize(
        "n, reference", [(100, 0.6190666158), (1000, 0.8310356673), (10000, 0.9987784576)]
    )
    def test_g10_reference_values(self, n, reference):
        assert abs(prob_pos_clt(g_family_table(10), n) - reference) < 1e-9

    def test_against_high_precision(self):
        g = g_family_table(3)
        p = CltParams.from_table(g)
        for n in (1, 10, 250):
            z = mpmath.mpf(p.mu.numerator) / p.mu.denominator * mpmath.sqrt(n) / mpmath.sqrt(
                mpmath.mpf(p.sigma2.numerator) / p.sigma2.denominator
            )
            assert abs(prob_pos_clt(g, n) - float(mpmath.ncdf(z))) < 1e-12

    def test_params(self):
        p = CltParams.from_table(g_family_table(10))
        assert p.mu == Fraction(1, 10)
        assert p.sigma2 == Fraction(1089, 100)

    def test_open_interval_and_monotone(self):
        up = [prob_pos_clt(g_family_table(10), n) for n in range(1, 400, 7)]
        assert all(0 < v < 1 for v in up)
        assert all(a < b for a, b in zip(up, up[1:]))
        down = [prob_pos_clt(st_pete_table(3, 9), n) for n in range(1, 100, 3)]
        assert all(a > b for a, b in zip(down, down[1:]))

    def test_gap_to_exact_shrinks(self):
        g = g_family_table(10)
        gap100 = abs(prob_pos_clt(g, 100) - float(prob_pos(g, 100)))
        gap1000 = abs(prob_pos_clt(g, 1000) - float(prob_pos(g, 1000)))
        assert abs(gap100 - 0.0704) < 5e-4
        assert gap1000 < gap100

    def test_zero_variance_rejected(self):
        with pytest.raises(DomainError):
            prob_pos_clt(GambleTable([(1, 1)]), 5)


class TestMinRepeatsClt:
    @staticmethod
    def oracle(table, eps):
        p = CltParams.from_table(table)
        mu = mpmath.mpf(p.mu.numerator) / p.mu.denominator
        sd = mpmath.sqrt(mpmath.mpf(p.sigma2.numerator) / p.sigma2.denominator)
        return bisect_int(lambda n: mpmath.ncdf(mu * mpmath.sqrt(n) / sd) >= 1 - mpmath.mpf(eps), 0, 10**7)

    @pytest.mark.parametrize("eps", [0.0012215424, 0.0013, 0.05, 0.2, 0.4999])
    def test_bisection_oracle(self, eps):
        g = g_family_table(10)
        assert min_repeats_clt(g, eps) == self.oracle(g, eps)

    def test_frozen_values(self):
        g = g_family_table(10)
        assert min_repeats_clt(g, 0.0012215424) == 10001
        assert min_repeats_clt(g, 0.05) == 2947
        assert min_repeats_clt(g, 0.5) == 1
        assert abs(min_repeats_clt(g, 0.0013) - 10**4) < 200

    def test_reverifies(self):
        g = st_pete_table(7, 7)
        for eps in (0.3, 0.1, 0.01):
            n = min_repeats_clt(g, eps)
            assert prob_pos_clt(g, n) >= 1 - eps - 1e-15
            if n > 1:
                assert prob_pos_clt(g, n - 1) < 1 - eps

    def test_monotone_in_epsilon(self):
        g = g_family_table(4)
        ns = [min_repeats_clt(g, e) for e in (0.4, 0.2, 0.1, 0.01, 0.001)]
        assert ns == sorted(ns)

    def test_nonpositive_mean(self):
        with pytest.raises(DomainError):
            min_repeats_clt(st_pete_table(3, 9), 0.1)

    def test_zero_variance(self):
        assert min_repeats_clt(GambleTable([(2, 1)]), 0.1) == 1
