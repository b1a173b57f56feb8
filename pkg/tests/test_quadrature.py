import random
from fractions import Fraction

import pytest

from riskcurve import (
    ContourSpec,
    DomainError,
    LaurentPoly,
    contour_positive_part,
    pgf,
    positive_part,
    power,
    st_pete_listing,
)


def random_poly(rng):
    lo = rng.randint(-12, 4)
    length = rng.randint(1, 15)
    coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(length)]
    coeffs[0] = coeffs[0] or Fraction(1)
    return LaurentPoly(coeffs, lo)


class TestContour:
    def test_monomials(self):
        assert abs(contour_positive_part(LaurentPoly.monomial(1)) - 1.0) < 1e-10
        assert abs(contour_positive_part(LaurentPoly.monomial(-1))) < 1e-10
        assert abs(contour_positive_part(LaurentPoly.monomial(0))) < 1e-10

    def test_random_polynomials(self):
        rng = random.Random(17)
        for _ in range(50):
            a = random_poly(rng)
            assert abs(contour_positive_part(a) - float(positive_part(a))) < 1e-8

    def test_st_pete_power(self):
        a = power(pgf(st_pete_listing(6, 5)), 100)
        assert abs(contour_positive_part(a) - 0.9088286275) < 1e-8

    @pytest.mark.parametrize("radius", [1.5, 2.0, 4.0])
    def test_radius_invariance(self, radius):
        a = power(pgf(st_pete_listing(6, 5)), 60)
        exact = float(positive_part(a))
        assert abs(contour_positive_part(a, ContourSpec(radius)) - exact) < 1e-8

    def test_sample_doubling(self):
        a = power(pgf(st_pete_listing(6, 5)), 20)
        k = 2048
        v1 = contour_positive_part(a, ContourSpec(2.0, k))
        v2 = contour_positive_part(a, ContourSpec(2.0, 2 * k))
        assert abs(v1 - v2) < 1e-10

    @pytest.mark.parametrize("radius", [1.0, 0.5, float("nan")])
    def test_bad_radius(self, radius):
        with pytest.raises(DomainError):
            ContourSpec(radius)

    def test_bad_sample_count(self):
        with pytest.raises(DomainError):
            ContourSpec(2.0, 100)

    def test_zero_polynomial(self):
        with pytest.raises(DomainError):
            contour_positive_part(LaurentPoly())
