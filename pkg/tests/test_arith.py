from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walk_kernel.arith import (
    LaurentPoly,
    ProjPoint,
    QuadExt,
    QuadField,
    Rat,
    TruncSeries,
    format_rat,
    is_rational_square,
    quad_field_solve,
    rat,
    rational_sqrt,
    series_mul,
)

fractions = st.fractions(max_denominator=50).map(lambda f: Rat(f.numerator, f.denominator))
radicands = st.integers(-40, 40).filter(lambda d: d not in (0, 1) and not is_rational_square(d))


class TestRat:
    def test_parse_forms(self):
        assert rat("3/4") == Rat(3, 4)
        assert rat(" -2 ") == -2
        assert rat(Fraction(5, 6)) == Rat(5, 6)
        assert rat("6/8") == Rat(3, 4)

    @pytest.mark.parametrize("bad", ["", "1/0", "0.5", "a/b", 0.5, True, None])
    def test_rejects(self, bad):
        with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
            rat(bad)

    def test_format_round_trip(self):
        for q in (Rat(0), Rat(7), Rat(-3, 11)):
            assert rat(format_rat(q)) == q
        assert format_rat(Rat(4, 2)) == "2"

    def test_squares(self):
        assert is_rational_square(Rat(9, 49))
        assert not is_rational_square(Rat(2))
        assert not is_rational_square(Rat(-4))
        assert rational_sqrt(Rat(9, 49)) == Rat(3, 7)


class TestQuadField:
    def test_validation(self):
        for bad in (0, 1, 4, Rat(9, 4)):
            with pytest.raises(ValueError):
                QuadField(bad)

    def test_containing_sqrt_scale(self):
        field, scale = QuadField.containing_sqrt(Rat(50, 9))
        assert field.radicand == 2
        root = field.sqrt() * scale
        assert root * root == Rat(50, 9)

    @settings(max_examples=60, deadline=None)
    @given(radicands, fractions, fractions, fractions, fractions)
    def test_field_axioms(self, D, a, b, c, e):
        F = QuadField(D)
        u, v = F(a, b), F(c, e)
        assert (u + v) - v == u
        assert u * v == v * u
        assert (u * v).conj() == u.conj() * v.conj()
        assert (u * u.conj()).is_rational()
        if u:
            assert u * u.inverse() == 1
            assert (v / u) * u == v

    def test_rational_elements_compare_across_fields(self):
        assert QuadField(2)(3, 0) == QuadField(5)(3, 0)
        assert QuadField(2)(3, 0) == 3
        assert hash(QuadField(2)(3, 0)) == hash(Rat(3))

    def test_mixing_irrational_fields_raises(self):
        with pytest.raises(ValueError):
            QuadField(2).sqrt() + QuadField(3).sqrt()


class TestSolve:
    @settings(max_examples=80, deadline=None)
    @given(fractions.filter(bool), fractions, fractions)
    def test_roots_satisfy_and_vieta(self, A, B, C):
        r1, r2 = quad_field_solve(A, B, C)
        for r in (r1, r2):
            assert A * r * r + B * r + C == 0
        assert r1 + r2 == -B / A
        assert r1 * r2 == C / A

    def test_rational_roots_stay_rational(self):
        r1, r2 = quad_field_solve(1, -5, 6)
        assert {r1, r2} == {2, 3}
        assert not isinstance(r1, QuadExt)

    def test_degenerate(self):
        with pytest.raises(ValueError, match="degenerate"):
            quad_field_solve(0, 1, 1)


class TestProjPoint:
    def test_canonical(self):
        assert ProjPoint.of(2, 4) == ProjPoint.of(1, 2) == ProjPoint.affine(Rat(1, 2))
        assert ProjPoint.of(-3, 0) == ProjPoint.infinity()
        assert ProjPoint.of(0, 5).to_json() == ["0", "1"]
        assert str(ProjPoint.infinity()) == "[1:0]"

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjPoint.of(0, 0)

    def test_value(self):
        assert ProjPoint.of(3, 6).value == Rat(1, 2)
        with pytest.raises(ValueError):
            ProjPoint.infinity().value


class TestLaurent:
    def test_arith_and_zero_pruning(self):
        x = LaurentPoly.monomial(1, 0)
        y = LaurentPoly.monomial(0, 1)
        p = (x + y) * (x - y)
        assert p == LaurentPoly({(2, 0): 1, (0, 2): -1})
        assert not (p - p)
        assert (x * LaurentPoly.monomial(-1, 0)) == LaurentPoly.constant(1)

    def test_substitution(self):
        p = LaurentPoly({(2, 1): 3, (-1, 0): 1})
        assert p.swap() == LaurentPoly({(1, 2): 3, (0, -1): 1})
        phi = p.substitute_monomials(lambda i, j: i - j, lambda i, j: i)
        assert phi == LaurentPoly({(1, 2): 3, (-1, -1): 1})

    def test_evaluate(self):
        p = LaurentPoly({(1, -1): 2, (0, 0): 1})
        assert p.evaluate(Rat(3), Rat(2)) == 4


class TestTruncSeries:
    def test_product_truncates(self):
        one_plus_t = TruncSeries(3, [LaurentPoly.constant(1), LaurentPoly.constant(1)])
        sq = series_mul(one_plus_t, one_plus_t)
        assert [sq[n].coeff(0, 0) for n in range(4)] == [1, 2, 1, 0]
        cube = sq * one_plus_t
        assert [cube[n].coeff(0, 0) for n in range(4)] == [1, 3, 3, 1]
        assert (cube * one_plus_t)[3].coeff(0, 0) == 4

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            series_mul(TruncSeries.zero(2), TruncSeries.zero(3))

    def test_shift_and_json(self):
        s = TruncSeries.from_terms(4, [(0, 1, 0, Rat(1, 2)), (2, 0, -1, 3)])
        assert s.shift(1).first_nonzero() == (1, 1, 0, Rat(1, 2))
        assert TruncSeries.from_json(s.to_json()) == s
        assert s.to_json()["terms"][0] == {"n": 0, "i": 1, "j": 0, "coeff": "1/2"}
