import random

import pytest
from fractions import Fraction

from hyperdet import options
from hyperdet.core import BudgetExceededError, ContractViolation, InputError
from hyperdet.grassmann import (
    Hypermatrix,
    SubsetFamily,
    WedgeAccumulator,
    complementary_families,
    det_classical,
    det_permutation_oracle,
    det_wedge,
    expand_first_index,
    gl_action,
    hyperdet,
    identity_matrix,
    minor_summation,
    split_sign,
    subtensor,
)
from hyperdet.scalar import POLY, UniPoly


def rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def random_tensor(rng, order, dim):
    return Hypermatrix(order, dim, [rational(rng) for _ in range(dim**order)])


def beta11_hankel(order, dim):
    return Hypermatrix.from_function(order, dim, lambda index: Fraction(1, sum(index) + 1))


@pytest.fixture
def rng():
    return random.Random(7)


class TestHypermatrix:
    """
    Dense storage, indexing and the elementary slice operations.
    """

    def test_from_nested(self):
        tensor = Hypermatrix.from_nested([[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
        assert tensor.shape == (3, 2)
        assert tensor[(1, 0, 1)] == 6
        assert tensor.entries[-1] == 8

    def test_entry_count(self):
        with pytest.raises(InputError):
            Hypermatrix(2, 2, [1, 2, 3])

    def test_non_cubical_nesting(self):
        with pytest.raises(InputError):
            Hypermatrix.from_nested([[1, 2, 3], [4, 5, 6]])

    def test_polynomial_entries(self):
        tensor = Hypermatrix.from_nested([[["0", "1"], "2"], ["3", ["1", "1"]]], POLY)
        assert tensor.ring is POLY
        assert tensor[(0, 0)] == UniPoly.y()
        assert tensor[(1, 0)] == UniPoly.constant(3)

    def test_index_out_of_range(self):
        with pytest.raises(InputError):
            Hypermatrix.zeros(2, 2)[(0, 2)]

    def test_scale_by_polynomial_promotes_ring(self):
        scaled = Hypermatrix.from_nested([[1, 2], [3, 4]]).scale(UniPoly.y())
        assert scaled.ring is POLY
        assert scaled[(1, 1)] == UniPoly([0, 4])


class TestPermutationOracle:
    """
    The signed sum over d-tuples of permutations.
    """

    def test_identity(self):
        assert det_permutation_oracle(Hypermatrix.from_nested(identity_matrix(2))) == 1

    def test_all_ones(self):
        assert det_permutation_oracle(Hypermatrix(4, 2, [1] * 16)) == 0

    def test_beta_hankel(self):
        """
        X_0 X_4 - 4 X_1 X_3 + 3 X_2^2 at X_m = 1/(m+1).
        """
        assert det_permutation_oracle(beta11_hankel(4, 2)) == Fraction(1, 30)

    def test_odd_order_vanishes(self, rng):
        for _ in range(5):
            assert det_permutation_oracle(random_tensor(rng, 3, 2)) == 0

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            det_permutation_oracle(Hypermatrix.zeros(4, 3), max_products=100)

    def test_parallel_matches_serial(self, rng, monkeypatch):
        """
        Chunks are merged in order, so the worker count does not change the exact value.
        """
        tensor = random_tensor(rng, 4, 3)
        serial = det_permutation_oracle(tensor)
        monkeypatch.setattr(options, "PARALLEL_MIN_PRODUCTS", 0)
        assert det_permutation_oracle(tensor, threads=2) == serial

    def test_coerces_nested_lists(self):
        with pytest.warns(UserWarning):
            assert det_permutation_oracle([[1, 2], [3, 4]]) == -2


class TestWedge:
    """
    Level-by-level evaluation of M^n over tuples of bit masks.
    """

    @pytest.mark.parametrize(
        "tensor, expected",
        [
            (Hypermatrix.from_nested(identity_matrix(2)), 1),
            (Hypermatrix(4, 2, [1] * 16), 0),
            (beta11_hankel(4, 2), Fraction(1, 30)),
            (beta11_hankel(2, 3), Fraction(1, 2160)),
            (Hypermatrix(6, 2, [Fraction(5, 3)] * 64), 0),
        ],
    )
    def test_examples(self, tensor, expected):
        assert det_wedge(tensor) == expected

    def test_odd_order_rejected(self):
        with pytest.raises(ContractViolation, match="odd order"):
            det_wedge(Hypermatrix.zeros(3, 2))

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            det_wedge(Hypermatrix.zeros(4, 3), max_state_bytes=1)

    def test_level_keys_have_equal_popcount(self, rng):
        tensor = random_tensor(rng, 4, 3)
        accumulator = WedgeAccumulator.start(4, 3)
        for level in range(1, 4):
            accumulator = accumulator.wedge(tensor)
            assert accumulator.level == level
            for key in accumulator.terms:
                assert {mask.bit_count() for mask in key} == {level}

    def test_matches_classical_determinant(self, rng):
        for dim in (1, 2, 3, 4):
            tensor = random_tensor(rng, 2, dim)
            assert det_wedge(tensor) == det_classical(tensor)

    def test_polynomial_scalars(self):
        tensor = Hypermatrix.from_nested([[["0", "1"], "1"], ["1", ["0", "1"]]], POLY)
        assert det_wedge(tensor) == UniPoly([-1, 0, 1])


class TestExpandFirstIndex:
    def test_two_by_two(self):
        assert expand_first_index(Hypermatrix.from_nested([[2, 3], [5, 7]])) == 2 * 7 - 3 * 5

    def test_dimension_one(self):
        assert expand_first_index(Hypermatrix(4, 1, [Fraction(-2, 7)])) == Fraction(-2, 7)

    def test_odd_order_rejected(self):
        with pytest.raises(ContractViolation, match="odd order"):
            expand_first_index(Hypermatrix.zeros(3, 2))


class TestAlgorithmEquivalence:
    """
    The three algorithms agree exactly on random rational input.
    """

    @pytest.mark.parametrize("order, dim", [(2, 2), (2, 3), (4, 2), (4, 3)])
    def test_random(self, rng, order, dim):
        for _ in range(5):
            tensor = random_tensor(rng, order, dim)
            oracle = det_permutation_oracle(tensor)
            assert det_wedge(tensor) == oracle
            assert expand_first_index(tensor) == oracle

    def test_dispatcher(self, rng):
        tensor = random_tensor(rng, 4, 2)
        values = {hyperdet(tensor, name) for name in ("oracle", "wedge", "expand", "auto")}
        assert len(values) == 1

    def test_dispatcher_odd_order_auto_uses_oracle(self):
        assert hyperdet(Hypermatrix(3, 2, [1, 2, 3, 4, 5, 6, 7, 8])) == 0

    def test_unknown_algorithm(self):
        with pytest.raises(InputError):
            hyperdet(Hypermatrix.zeros(2, 2), "laplace")


class TestStructuralProperties:
    def test_multilinearity(self, rng):
        tensor = random_tensor(rng, 4, 2)
        factor = Fraction(-5, 3)
        scaled = tensor.scale_slice(0, 0, factor)
        assert det_permutation_oracle(scaled) == factor * det_permutation_oracle(tensor)

    @pytest.mark.parametrize("axis", [0, 1, 2, 3])
    def test_antisymmetry(self, rng, axis):
        tensor = random_tensor(rng, 4, 3)
        swapped = tensor.swap_slices(axis, 0, 2)
        assert det_wedge(swapped) == -det_wedge(tensor)


class TestGLAction:
    def test_identity(self, rng):
        tensor = random_tensor(rng, 4, 2)
        assert gl_action([identity_matrix(2)] * 4, tensor) == tensor

    def test_matrix_form(self):
        """
        For d = 2 the action is g M h^T.
        """
        g = [[1, 2], [3, 4]]
        h = [[0, 1], [-1, 5]]
        m = [[2, -1], [Fraction(1, 2), 3]]
        expected = [
            [sum(g[i][p] * m[p][q] * h[j][q] for p in range(2) for q in range(2)) for j in range(2)]
            for i in range(2)
        ]
        assert gl_action([g, h], Hypermatrix.from_nested(m)).as_matrix() == expected

    @pytest.mark.parametrize("order, dim", [(2, 2), (2, 3), (4, 2), (4, 3)])
    def test_invariance(self, rng, order, dim):
        tensor = random_tensor(rng, order, dim)
        g_list = []
        factor = Fraction(1)
        while len(g_list) < order:
            g = [[rational(rng) for _ in range(dim)] for _ in range(dim)]
            if det_classical(g):
                g_list.append(g)
                factor *= det_classical(g)
        assert det_permutation_oracle(gl_action(g_list, tensor)) == factor * det_permutation_oracle(tensor)

    def test_wrong_matrix_count(self):
        with pytest.raises(InputError):
            gl_action([identity_matrix(2)], Hypermatrix.zeros(2, 2))


class TestMinors:
    def test_subtensor_full(self, rng):
        tensor = random_tensor(rng, 4, 3)
        assert subtensor(tensor, SubsetFamily.full(4, 3)) == tensor

    def test_subtensor_classical_minor(self):
        tensor = Hypermatrix.from_nested([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert subtensor(tensor, SubsetFamily([(0, 1), (1, 2)])).as_matrix() == [[2, 3], [5, 6]]

    def test_subtensor_singletons(self, rng):
        tensor = random_tensor(rng, 4, 3)
        minor = subtensor(tensor, SubsetFamily.singletons((2, 0, 1, 2)))
        assert minor.shape == (4, 1)
        assert minor.entries == (tensor[(2, 0, 1, 2)],)

    def test_subtensor_unequal_sizes(self):
        with pytest.raises(InputError):
            subtensor(Hypermatrix.zeros(2, 3), SubsetFamily([(0,), (0, 1)]))

    def test_subset_family_validation(self):
        with pytest.raises(InputError):
            SubsetFamily([(1, 0)])

    @pytest.mark.parametrize(
        "first, second, sign",
        [
            ([(0,), (0,)], [(1,), (1,)], 1),
            ([(1,), (1,)], [(0,), (0,)], 1),
            ([(1,), (0,)], [(0,), (1,)], -1),
        ],
    )
    def test_split_sign(self, first, second, sign):
        assert split_sign(SubsetFamily(first), SubsetFamily(second)) == sign

    def test_split_sign_non_partition(self):
        with pytest.raises(InputError):
            split_sign(SubsetFamily([(0,), (0,)]), SubsetFamily([(0,), (1,)]))

    def test_complementary_families_count(self):
        assert len(list(complementary_families(3, 4, 1))) == 3**4

    def test_minor_summation_with_zero(self, rng):
        tensor = random_tensor(rng, 4, 2)
        zero = Hypermatrix.zeros(4, 2)
        assert minor_summation(tensor, zero) == det_wedge(tensor)
        assert minor_summation(zero, tensor) == det_wedge(tensor)

    @pytest.mark.parametrize("order, dim", [(2, 2), (2, 3), (4, 2)])
    def test_minor_summation_random(self, rng, order, dim):
        for _ in range(3):
            first, second = random_tensor(rng, order, dim), random_tensor(rng, order, dim)
            assert minor_summation(first, second) == det_permutation_oracle(first + second)

    def test_minor_summation_shape_mismatch(self):
        with pytest.raises(InputError):
            minor_summation(Hypermatrix.zeros(2, 2), Hypermatrix.zeros(2, 3))


class TestClassicalDeterminant:
    def test_pivoting(self):
        assert det_classical([[0, 1], [1, 0]]) == -1
        assert det_classical([[0, 0], [1, 1]]) == 0

    def test_empty(self):
        assert det_classical([]) == 1
