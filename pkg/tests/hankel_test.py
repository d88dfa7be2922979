import pytest
from fractions import Fraction

from hyperdet.core import BudgetExceededError, InputError
from hyperdet.grassmann import det_permutation_oracle, det_wedge
from hyperdet.hankel import (
    CoefficientTable,
    MomentSequence,
    SparseMultiPoly,
    build_hankel,
    c_lambda_table,
    dyson_constant_term,
    dyson_constant_term_general,
    dyson_sign,
    hankel_det_fast,
    top_coefficient,
    top_coefficient_closed_form,
    truncated_moments,
    vandermonde_power,
)
from hyperdet.scalar import POLY, UniPoly


def beta11(last):
    return MomentSequence.from_function(lambda j: Fraction(1, j + 1), last)


class TestMomentSequence:
    def test_values(self):
        moments = MomentSequence(["1", "1/2", Fraction(1, 3)])
        assert moments.values == (1, Fraction(1, 2), Fraction(1, 3))
        assert moments.last_index == 2
        assert moments.to_json() == ["1", "1/2", "1/3"]

    def test_empty(self):
        with pytest.raises(InputError):
            MomentSequence([])

    def test_cover(self):
        moments = beta11(4)
        assert moments.covers(4, 2)
        assert not moments.covers(2, 4)
        with pytest.raises(InputError, match="moment sequence too short"):
            moments.require_cover(2, 4)

    def test_scaled(self):
        assert beta11(2).scaled("2") == MomentSequence([2, 1, Fraction(2, 3)])


class TestBuildHankel:
    def test_entries_depend_on_index_sum(self):
        tensor = build_hankel(beta11(6), 3, 3)
        assert tensor.shape == (3, 3)
        assert tensor[(2, 0, 1)] == tensor[(1, 1, 1)] == Fraction(1, 4)

    def test_short_moments(self):
        with pytest.raises(InputError, match="moment sequence too short"):
            build_hankel(beta11(3), 2, 4)

    def test_coerces_list(self):
        with pytest.warns(UserWarning):
            tensor = build_hankel([1, 2, 3], 2, 2)
        assert tensor.as_matrix() == [[1, 2], [2, 3]]


class TestSparseMultiPoly:
    def test_vandermonde_square(self):
        poly = vandermonde_power(2, 1)
        assert poly.terms == {(2, 0): 1, (1, 1): -2, (0, 2): 1}
        assert poly.evaluate([1, 3]) == 4

    def test_homogeneity(self):
        """
        Delta^{2k} is homogeneous of degree k n (n-1).
        """
        for n, k in [(2, 3), (3, 1), (3, 2), (4, 1)]:
            assert vandermonde_power(n, k).total_degrees() == {k * n * (n - 1)}

    def test_product_and_sum(self):
        x0, x1 = SparseMultiPoly.variable(2, 0), SparseMultiPoly.variable(2, 1)
        assert (x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1
        assert SparseMultiPoly.one(2).mul_difference(1, 0) == x1 - x0

    def test_zero_coefficients_dropped(self):
        poly = SparseMultiPoly(2, {(1, 0): 1, (0, 1): 0})
        assert len(poly) == 1
        assert poly.coefficient((0, 1)) == 0

    def test_bad_exponents(self):
        with pytest.raises(InputError):
            SparseMultiPoly(2, {(1,): 1})

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            vandermonde_power(3, 2, max_terms=2)


class TestCoefficientTable:
    """
    c_lambda^{n,k} with the 1/n! normalization folded in.
    """

    def test_matrix_case(self):
        table = c_lambda_table(2, 1)
        assert table.as_dict() == {(0, 2): 1, (1, 1): -1}

    def test_order_four(self):
        table = c_lambda_table(2, 2)
        assert table.as_dict() == {(0, 4): 1, (1, 3): -4, (2, 2): 3}

    @pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
    def test_support_bounds(self, n, k):
        assert c_lambda_table(n, k).support_bounds_hold()

    def test_support_bounds_detect_violation(self):
        assert not CoefficientTable(2, 1, {(2, 0): 1}).support_bounds_hold()

    def test_records_and_frame(self):
        table = c_lambda_table(2, 2)
        assert table.to_records()[0] == {"lambda": [0, 4], "coeff": "1"}
        frame = table.to_frame()
        assert list(frame.columns) == ["lambda", "coeff"]
        assert len(frame) == 3
        assert frame.attrs["k"] == 2
        assert "1/n!" in frame.attrs["normalization"]

    def test_evaluate_polynomial_values(self):
        """
        Polynomial moments give a polynomial determinant.
        """
        y = UniPoly.y()
        value = c_lambda_table(2, 1).evaluate([y, UniPoly.constant(1), y])
        assert value == y * y - 1
        assert c_lambda_table(2, 1).evaluate([y, 1, y], POLY) == y * y - 1


class TestHankelDeterminant:
    @pytest.mark.parametrize(
        "n, k, expected",
        [(2, 1, Fraction(1, 12)), (2, 2, Fraction(1, 30)), (3, 1, Fraction(1, 2160)), (1, 3, 1)],
    )
    def test_beta_moments(self, n, k, expected):
        assert hankel_det_fast(beta11(2 * k * (n - 1)), n, k) == expected

    @pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_matches_tensor(self, n, k):
        moments = MomentSequence.from_function(lambda j: Fraction(j * j - 3, j + 2), 2 * k * (n - 1))
        tensor = build_hankel(moments, n, 2 * k)
        assert hankel_det_fast(moments, n, k) == det_wedge(tensor)

    @pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (2, 2), (3, 2)])
    def test_scaling_moments_scales_by_power_n(self, n, k):
        """
        Every term of the expansion is a product of n moments.
        """
        factor = Fraction(3, 7)
        moments = MomentSequence.from_function(lambda j: Fraction(j * j - 3, j + 2), 2 * k * (n - 1))
        scaled = hankel_det_fast(moments.scaled(factor), n, k)
        assert scaled == factor**n * hankel_det_fast(moments, n, k)
        beta = beta11(2 * k * (n - 1))
        assert hankel_det_fast(beta.scaled(-1), n, k) == (-1) ** n * hankel_det_fast(beta, n, k)

    def test_matches_oracle_small(self):
        moments = MomentSequence([2, -1, Fraction(1, 3), 5, Fraction(-7, 2)])
        assert hankel_det_fast(moments, 2, 2) == det_permutation_oracle(build_hankel(moments, 2, 4))

    def test_short_moments(self):
        with pytest.raises(InputError):
            hankel_det_fast(beta11(3), 2, 2)


class TestTopCoefficient:
    @pytest.mark.parametrize(
        "n, k, expected",
        [(2, 1, -1), (2, 2, 3), (3, 1, -1), (4, 1, 1), (3, 2, 15)],
    )
    def test_values(self, n, k, expected):
        assert top_coefficient(n, k) == expected
        assert top_coefficient_closed_form(n, k) == expected

    @pytest.mark.parametrize("n, k, sign", [(1, 5, 1), (2, 1, -1), (2, 2, 1), (3, 1, -1), (4, 1, 1), (5, 1, 1)])
    def test_dyson_sign(self, n, k, sign):
        assert dyson_sign(n, k) == sign

    def test_truncation(self):
        """
        Moments beyond m_{k(n-1)} do not reach the determinant once they are zero.
        """
        for n, k in [(2, 1), (2, 2), (3, 1)]:
            top = Fraction(-3, 2)
            moments = truncated_moments(beta11(2 * k * (n - 1)), n, k, top)
            assert moments.last_index == 2 * k * (n - 1)
            assert moments[k * (n - 1)] == top
            assert hankel_det_fast(moments, n, k) == top_coefficient(n, k) * top**n

    def test_truncation_pads_short_sequence(self):
        moments = truncated_moments(MomentSequence([1]), 2, 2, 7)
        assert moments.values == (1, 0, 7, 0, 0)


class TestDysonConstantTerm:
    @pytest.mark.parametrize("n, k, expected", [(1, 4, 1), (2, 1, 2), (2, 2, 6), (3, 1, 6), (3, 2, 90)])
    def test_equal_exponents(self, n, k, expected):
        assert dyson_constant_term(n, k) == expected

    def test_general_exponents(self):
        assert dyson_constant_term_general([1, 2]) == 3
        assert dyson_constant_term_general([1, 1, 2]) == 12
        assert dyson_constant_term_general([2, 0, 1]) == 3

    def test_unchecked_uses_multinomial(self):
        assert dyson_constant_term_general([1, 1, 1, 1], check=False) == 24

    def test_negative_exponent(self):
        with pytest.raises(InputError):
            dyson_constant_term_general([1, -1])
