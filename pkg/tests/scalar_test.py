import pickle

import pytest
import sympy
from fractions import Fraction

from hyperdet.core import InputError
from hyperdet.scalar import (
    POLY,
    RATIONAL,
    Y,
    UniPoly,
    binomial,
    factorial,
    multinomial,
    pochhammer,
    ring_for,
    ring_of,
    to_rational,
)


class TestToRational:
    """
    Exact conversion of user input to Fraction.
    """

    @pytest.mark.parametrize(
        "value, expected",
        [
            (3, Fraction(3)),
            ("1/2", Fraction(1, 2)),
            (" -4/6 ", Fraction(-2, 3)),
            ("0.25", Fraction(1, 4)),
            (2.0, Fraction(2)),
        ],
    )
    def test_accepted(self, value, expected):
        assert to_rational(value) == expected

    @pytest.mark.parametrize("value", ["1/0", "abc", 0.1, True, None])
    def test_rejected(self, value):
        with pytest.raises(InputError):
            to_rational(value)


class TestCombinatorics:
    @pytest.mark.parametrize(
        "x, m, expected",
        [(1, 0, 1), (1, 4, 24), (Fraction(1, 2), 2, Fraction(3, 4)), (-2, 3, 0)],
    )
    def test_pochhammer(self, x, m, expected):
        assert pochhammer(x, m) == expected

    def test_pochhammer_recurrence(self):
        """
        (x)_{m+1} = (x)_m (x + m).
        """
        x = Fraction(-7, 3)
        for m in range(8):
            assert pochhammer(x, m + 1) == pochhammer(x, m) * (x + m)

    def test_pochhammer_negative_length(self):
        with pytest.raises(InputError):
            pochhammer(1, -1)

    @pytest.mark.parametrize("parts, expected", [([1, 1], 2), ([2, 2], 6), ([1, 1, 1], 6), ([3], 1)])
    def test_multinomial(self, parts, expected):
        assert multinomial(parts) == expected

    def test_multinomial_is_symmetric(self):
        assert multinomial([1, 2, 3]) == multinomial([3, 1, 2]) == 60

    def test_multinomial_empty(self):
        with pytest.raises(InputError):
            multinomial([])

    def test_factorial_and_binomial(self):
        assert factorial(0) == 1
        assert binomial(4, 2) == 6
        assert binomial(2, 3) == 0


class TestUniPoly:
    """
    Univariate polynomials in y with exact coefficients.
    """

    def test_canonical_form(self):
        assert UniPoly([1, 2, 0, 0]).coefficients == (Fraction(1), Fraction(2))
        assert UniPoly([0, 0]).degree == -1
        assert not UniPoly([0])

    def test_arithmetic(self):
        y = UniPoly.y()
        p = y * y - Fraction(1, 2) * y + Fraction(1, 12)
        assert p.degree == 2
        assert p.coefficients == (Fraction(1, 12), Fraction(-1, 2), Fraction(1))
        assert (y + 1) * (y - 1) == y**2 - 1
        assert 1 - y == UniPoly([1, -1])

    def test_multiplication_is_commutative_and_degree_additive(self):
        p = UniPoly([1, Fraction(2, 3), -1])
        q = UniPoly([Fraction(-1, 5), 4])
        assert p * q == q * p
        assert (p * q).degree == p.degree + q.degree

    def test_evaluate_and_compose(self):
        p = UniPoly.linear(1, Fraction(-1, 2))
        assert p(Fraction(1, 2)) == 0
        assert p.compose(UniPoly.linear(-1, 1)) == UniPoly.linear(-1, Fraction(1, 2))

    def test_constants_compare_with_rationals(self):
        assert UniPoly.constant(3) == 3
        assert hash(UniPoly.constant(Fraction(1, 2))) == hash(Fraction(1, 2))

    @pytest.mark.parametrize(
        "coefficients, text",
        [([], "0"), ([Fraction(1, 12), Fraction(-1, 2), 1], "y^2 - 1/2*y + 1/12"), ([-1, 0, -3], "-3*y^2 - 1")],
    )
    def test_str(self, coefficients, text):
        assert str(UniPoly(coefficients)) == text

    def test_backed_by_sympy_over_qq(self):
        p = UniPoly([Fraction(1, 3), 0, 2])
        assert p.as_sympy() == sympy.Poly(2 * Y**2 + sympy.Rational(1, 3), Y, domain="QQ")
        assert p.as_sympy().get_domain() == sympy.QQ
        assert UniPoly([0]).as_sympy().is_zero

    def test_from_sympy_renames_generator(self):
        x = sympy.Symbol("x")
        p = UniPoly.from_sympy(sympy.Poly(x**2 / 2 - 1, x))
        assert p == UniPoly([-1, 0, Fraction(1, 2)])
        assert p.as_sympy().gens == (Y,)
        assert all(isinstance(c, Fraction) for c in p.coefficients)

    def test_pickles(self):
        p = UniPoly([Fraction(-1, 2), 3])
        assert pickle.loads(pickle.dumps(p)) == p

    def test_json(self):
        p = UniPoly([Fraction(-1, 2), 1])
        assert p.to_json() == ["-1/2", "1"]
        assert UniPoly.from_json(p.to_json()) == p


class TestScalarRings:
    def test_rational_ring(self):
        assert RATIONAL.zero == 0 and RATIONAL.one == 1
        assert RATIONAL.parse("3/4") == Fraction(3, 4)
        assert RATIONAL.dump(Fraction(3, 4)) == "3/4"

    def test_poly_ring(self):
        assert POLY.parse(["1", "-2"]) == UniPoly([1, -2])
        assert POLY.parse("5") == UniPoly.constant(5)
        assert POLY.dump(UniPoly([0, 1])) == ["0", "1"]

    def test_lookup(self):
        assert ring_for("poly") is POLY
        assert ring_of(UniPoly.y()) is POLY
        assert ring_of(Fraction(1)) is RATIONAL
        with pytest.raises(InputError):
            ring_for("complex")

    def test_rings_unpickle_as_singletons(self):
        """
        Worker processes must see the same ring objects.
        """
        assert pickle.loads(pickle.dumps(POLY)) is POLY
        assert pickle.loads(pickle.dumps(RATIONAL)) is RATIONAL
