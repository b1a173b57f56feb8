from fractions import Fraction
from pathlib import Path

import pytest

from riskcurve import (
    DomainError,
    GambleTable,
    NotFoundError,
    NumericalError,
    ProbSeries,
    Recurrence,
    SingularityError,
    extend,
    format_decimal,
    g_family_table,
    guess_recurrence,
    prob_pos,
    prob_pos_sweep,
    required_terms,
    st_pete_table,
)

F = Fraction


@pytest.fixture(scope="module")
def g2_fit():
    series = prob_pos_sweep(g_family_table(2), 80)
    return series, guess_recurrence(series, 6, 6, 20)


class TestGuess:
    def test_constant_series(self):
        rec = guess_recurrence(prob_pos_sweep(st_pete_table(4, 0), 30), 3, 3, 10)
        assert rec.order == 1 and rec.degree == 0
        assert rec.coeffs == ((F(-1),), (F(1),))

    def test_geometric_series(self):
        # ahead after n plays iff at least one win: 1 - (9/10)^n
        t = GambleTable([(0, F(9, 10)), (1, F(1, 10))])
        s = prob_pos_sweep(t, 40)
        assert s[7] == 1 - F(9, 10) ** 7
        rec = guess_recurrence(s, 3, 3, 10)
        assert (rec.order, rec.degree) == (2, 0)
        assert rec.coeffs == ((F(9),), (F(-19),), (F(10),))

    def test_g2_minimal_cell(self, g2_fit):
        _, rec = g2_fit
        assert (rec.order, rec.degree) == (4, 5)
        assert rec.status == "empirically verified"
        assert rec.meta["held_out"] == 20

    def test_annihilates_held_out_terms(self, g2_fit):
        series, rec = g2_fit
        assert rec.annihilates(series.probabilities)
        assert rec.annihilates(prob_pos_sweep(g_family_table(2), 150).probabilities)

    def test_deterministic(self, g2_fit):
        series, rec = g2_fit
        assert guess_recurrence(series, 6, 6, 20) == rec

    def test_modular_route(self):
        # 7 * 15 = 105 unknowns: above the fraction-free elimination limit
        s = prob_pos_sweep(g_family_table(4), 200)
        rec = guess_recurrence(s, 7, 15, 20)
        assert (rec.order, rec.degree) == (6, 14)
        assert extend(rec, s, 320)[320] == prob_pos(g_family_table(4), 320)

    def test_too_few_terms(self):
        s = prob_pos_sweep(g_family_table(3), 30)
        with pytest.raises(DomainError, match=str(required_terms(5, 5, 10))):
            guess_recurrence(s, 5, 5, 10)

    def test_not_found(self):
        s = prob_pos_sweep(g_family_table(3), 40)
        with pytest.raises(NotFoundError):
            guess_recurrence(s, 2, 3, 10)

    def test_required_terms(self):
        assert required_terms(4, 5, 20) == 5 * 6 + 4 + 20


class TestExtend:
    def test_g2_predictions(self, g2_fit):
        series, rec = g2_fit
        ext = extend(rec, series, 100)
        g = g_family_table(2)
        assert ext[50] == prob_pos(g, 50)
        assert ext[100] == prob_pos(g, 100)
        assert ext.meta["method"] == "recurrence"
        assert len(ext) == 100

    def test_g3_long_extension(self):
        g = g_family_table(3)
        s = prob_pos_sweep(g, 130)
        rec = guess_recurrence(s, 6, 10, 20)
        assert extend(rec, s, 400)[400] == prob_pos(g, 400)

    def test_truncation(self, g2_fit):
        series, rec = g2_fit
        assert extend(rec, series, 10).values == series.values[:10]

    def test_rejects_foreign_series(self, g2_fit):
        _, rec = g2_fit
        with pytest.raises(DomainError):
            extend(rec, prob_pos_sweep(g_family_table(3), 80), 90)

    def test_out_of_range_aborts(self):
        s = ProbSeries(g_family_table(2), True, ((1, F(1, 2)),))
        doubling = Recurrence(((F(-2),), (F(1),)), (F(1, 2),))
        assert extend(doubling, s, 2)[2] == 1
        with pytest.raises(NumericalError):
            extend(doubling, s, 3)

    def test_vanishing_leading_coefficient(self):
        s = ProbSeries(g_family_table(2), True, ((1, F(1, 2)),))
        rec = Recurrence(((F(2), F(-1)), (F(-2), F(1))), (F(1, 2),))
        with pytest.raises(SingularityError):
            extend(rec, s, 5)


class TestRecurrenceType:
    def test_json_round_trip(self, g2_fit):
        _, rec = g2_fit
        back = Recurrence.from_json(rec.to_json())
        assert back == rec
        assert '"status": "empirically verified"' in rec.to_json()

    def test_validation(self):
        with pytest.raises(DomainError):
            Recurrence(((F(1),),), ())
        with pytest.raises(DomainError):
            Recurrence(((F(1),), (F(0),)), (F(0),))
        with pytest.raises(DomainError):
            Recurrence(((F(1),), (F(1),)), ())

    def test_render(self):
        rec = Recurrence(((F(-1),), (F(1),)), (F(1),))
        assert str(rec).startswith("(-1)*a(n+0) + (1)*a(n+1) = 0")


@pytest.fixture(scope="module")
def fitted():
    path = Path(__file__).parent / "data" / "g10_recurrence.json"
    return Recurrence.from_json(path.read_text())


@pytest.fixture(scope="module")
def series():
    return prob_pos_sweep(g_family_table(10), 420)


class TestG10Fixture:
    """A G_10 recurrence fitted offline from 420 terms (382 fit, 38 held out).

    Order 18, degree 17: 342 unknowns, far beyond what a short prefix can
    determine.  Checked here against direct exact computation only.
    """

    def test_shape(self, fitted):
        assert (fitted.order, fitted.degree) == (18, 17)
        assert fitted.meta["status"] == "empirically verified"

    def test_annihilates_fresh_terms(self, fitted):
        assert fitted.annihilates(prob_pos_sweep(g_family_table(10), 600).probabilities)

    def test_extension_to_1000(self, fitted, series):
        ext = extend(fitted, series, 1000)
        assert ext[1000] == prob_pos(g_family_table(10), 1000)
        assert format_decimal(ext[1000]) == "0.8417618586"

    @pytest.mark.slow
    def test_extension_to_10000(self, fitted, series):
        ext = extend(fitted, series, 10000)
        assert format_decimal(ext[10000]) == "0.9988718721"
        assert all(0 <= p <= 1 for p in ext.probabilities)
