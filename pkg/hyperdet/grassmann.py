"""
Module: hyperdet.grassmann

Dense hypermatrices and Cayley's hyperdeterminant.

A hypermatrix of order d and dimension n is read as the element
sum_I M_I eta_{i_1} (x) ... (x) eta_{i_d} of the d-fold tensor power of the Grassmann algebra on
eta_0, ..., eta_{n-1}. Its hyperdeterminant is the coefficient of (eta_0 ... eta_{n-1})^{(x) d}
in M^n / n!. Three independent evaluations are provided and checked against each other:

- det_permutation_oracle: signed sum over d-tuples of permutations.
- det_wedge: level-by-level evaluation of M^n over tuples of index subsets (bit masks).
- expand_first_index: recursive expansion along the first index (memoized on minors).

The module also provides the GL(n)^d action, sub-hypermatrices M[I], the split sign of a pair
of complementary subset families, the minor summation formula for Det(M + N), and a
fraction-free classical determinant for matrices.

All indices are 0-based.
"""

import concurrent.futures
import itertools
import logging
import math
import typing
from fractions import Fraction

from hyperdet import options
from hyperdet.contracts import RequiresEvenOrder, RequiresHypermatrix
from hyperdet.core import BudgetExceededError, InputError, requires
from hyperdet.scalar import POLY, RATIONAL, ScalarRing, UniPoly, to_rational


__all__ = [
    "Hypermatrix",
    "IndexTuple",
    "SubsetFamily",
    "WedgeAccumulator",
    "det_permutation_oracle",
    "det_wedge",
    "expand_first_index",
    "hyperdet",
    "gl_action",
    "subtensor",
    "split_sign",
    "complementary_families",
    "minor_summation",
    "det_classical",
    "identity_matrix",
]

logger = logging.getLogger(__name__)

IndexTuple = tuple[int, ...]
Matrix = typing.Sequence[typing.Sequence[typing.Any]]

ALGORITHMS = ("oracle", "wedge", "expand", "auto")


class Hypermatrix:
    """
    Dense order-d, dimension-n array of ring scalars in row-major layout.

    Hypermatrices are immutable; every operation returns a new one.
    """

    __slots__ = ("_order", "_dim", "_entries", "_ring")

    def __init__(
        self,
        order: int,
        dim: int,
        entries: typing.Iterable[typing.Any],
        ring: ScalarRing = RATIONAL,
    ):
        if order < 1 or dim < 1:
            raise InputError(f"order and dim must be positive, got order={order}, dim={dim}")
        values = tuple(e if ring.contains(e) else ring.parse(e) for e in entries)
        if len(values) != dim**order:
            raise InputError(
                f"expected {dim}^{order} = {dim**order} entries, got {len(values)}"
            )
        self._order = order
        self._dim = dim
        self._entries = values
        self._ring = ring

    @classmethod
    def from_function(
        cls,
        order: int,
        dim: int,
        func: typing.Callable[[IndexTuple], typing.Any],
        ring: ScalarRing = RATIONAL,
    ) -> "Hypermatrix":
        """Build the hypermatrix whose entry at I is func(I)."""
        return cls(
            order, dim, (func(index) for index in itertools.product(range(dim), repeat=order)), ring
        )

    @classmethod
    def from_nested(cls, data, ring: ScalarRing = RATIONAL) -> "Hypermatrix":
        """
        Build a hypermatrix from nested lists, e.g. [[1, 0], [0, 1]] for a 2 x 2 matrix.

        Raises:
            InputError: If the nesting is ragged or not cubical.
        """
        order = 0
        first = data
        while isinstance(first, (list, tuple)) and not (
            ring.name == "poly" and order > 0 and _is_flat_scalar_list(first)
        ):
            if len(first) == 0:
                raise InputError("empty axis in nested hypermatrix")
            order += 1
            first = first[0]
        dim = len(data)

        flat: list = []

        def walk(node, depth):
            if depth == order:
                flat.append(node)
                return
            if not isinstance(node, (list, tuple)) or len(node) != dim:
                raise InputError("nested hypermatrix is not cubical")
            for child in node:
                walk(child, depth + 1)

        walk(data, 0)
        return cls(order, dim, flat, ring)

    @classmethod
    def zeros(cls, order: int, dim: int, ring: ScalarRing = RATIONAL) -> "Hypermatrix":
        return cls(order, dim, [ring.zero] * dim**order, ring)

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def ring(self) -> ScalarRing:
        return self._ring

    @property
    def entries(self) -> tuple:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        """(order, dim)."""
        return self._order, self._dim

    def offset(self, index: IndexTuple) -> int:
        """
        Row-major position of an index tuple in `entries`.

        Args:
            index (tuple[int, ...]): One index per axis, each in range(dim).

        Returns:
            int: The flat offset.

        Raises:
            InputError: If the index has the wrong length or a coordinate out of range.
        """
        if len(index) != self._order:
            raise InputError(f"index {index} has length {len(index)}, expected {self._order}")
        flat = 0
        for i in index:
            if not 0 <= i < self._dim:
                raise InputError(f"index {index} out of range for dimension {self._dim}")
            flat = flat * self._dim + i
        return flat

    def __getitem__(self, index: IndexTuple):
        return self._entries[self.offset(tuple(index))]

    def indices(self) -> typing.Iterator[IndexTuple]:
        """All index tuples in row-major order."""
        return itertools.product(range(self._dim), repeat=self._order)

    def items(self) -> typing.Iterator[tuple[IndexTuple, typing.Any]]:
        return zip(self.indices(), self._entries)

    def map(self, func: typing.Callable, ring: typing.Optional[ScalarRing] = None) -> "Hypermatrix":
        """Apply func to every entry, keeping the ring unless another is given."""
        return Hypermatrix(self._order, self._dim, map(func, self._entries), ring or self._ring)

    def _check_same_shape(self, other: "Hypermatrix") -> None:
        if not isinstance(other, Hypermatrix):
            raise InputError(f"expected a Hypermatrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Hypermatrix") -> "Hypermatrix":
        self._check_same_shape(other)
        ring = other.ring if other.ring is not RATIONAL else self._ring
        return Hypermatrix(
            self._order, self._dim, (a + b for a, b in zip(self._entries, other.entries)), ring
        )

    def __sub__(self, other: "Hypermatrix") -> "Hypermatrix":
        return self + (-other)

    def __neg__(self) -> "Hypermatrix":
        return self.map(lambda e: -e)

    def scale(self, factor) -> "Hypermatrix":
        """Multiply every entry by a scalar; a UniPoly factor makes the result polynomial."""
        ring = POLY if isinstance(factor, UniPoly) else self._ring
        return self.map(lambda e: e * factor, ring)

    def scale_slice(self, axis: int, position: int, factor) -> "Hypermatrix":
        """Multiply the slice i_axis = position by factor."""
        return Hypermatrix.from_function(
            self._order,
            self._dim,
            lambda index: self[index] * factor if index[axis] == position else self[index],
            self._ring,
        )

    def swap_slices(self, axis: int, first: int, second: int) -> "Hypermatrix":
        """Exchange the slices i_axis = first and i_axis = second."""
        swap = {first: second, second: first}

        def entry(index):
            moved = list(index)
            moved[axis] = swap.get(index[axis], index[axis])
            return self[tuple(moved)]

        return Hypermatrix.from_function(self._order, self._dim, entry, self._ring)

    def as_matrix(self) -> list[list]:
        """Rows of an order-2 hypermatrix."""
        if self._order != 2:
            raise InputError(f"as_matrix needs order 2, got order {self._order}")
        n = self._dim
        return [list(self._entries[i * n:(i + 1) * n]) for i in range(n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypermatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other.entries

    def __hash__(self) -> int:
        return hash((self._order, self._dim, self._entries))

    def __repr__(self) -> str:
        return f"Hypermatrix(order={self._order}, dim={self._dim}, scalar={self._ring.name})"


def _is_flat_scalar_list(node) -> bool:
    return all(not isinstance(c, (list, tuple)) for c in node)


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


class SubsetFamily:
    """
    A tuple (I_1, ..., I_d) of sorted, duplicate-free subsets of {0, ..., n-1}, one per axis.

    Subsets may differ between axes; a family used to cut a sub-hypermatrix must have
    equal-size subsets.
    """

    __slots__ = ("_subsets",)

    def __init__(self, subsets: typing.Iterable[typing.Iterable[int]]):
        normalized = []
        for subset in subsets:
            members = tuple(subset)
            if any(i < 0 for i in members):
                raise InputError(f"negative index in subset {members}")
            if any(a >= b for a, b in zip(members, members[1:])):
                raise InputError(f"subset {members} is not sorted and duplicate-free")
            normalized.append(members)
        if not normalized:
            raise InputError("a subset family needs at least one axis")
        self._subsets: tuple[tuple[int, ...], ...] = tuple(normalized)

    @classmethod
    def full(cls, order: int, dim: int) -> "SubsetFamily":
        return cls([range(dim)] * order)

    @classmethod
    def singletons(cls, index: IndexTuple) -> "SubsetFamily":
        return cls([(i,) for i in index])

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return self._subsets

    @property
    def order(self) -> int:
        return len(self._subsets)

    @property
    def size(self) -> int:
        """Common cardinality of the subsets."""
        sizes = {len(s) for s in self._subsets}
        if len(sizes) != 1:
            raise InputError(f"subsets have unequal sizes {sorted(sizes)}")
        return sizes.pop()

    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in subset) for subset in self._subsets)

    def complement(self, dim: int) -> "SubsetFamily":
        return SubsetFamily(
            [tuple(i for i in range(dim) if i not in set(subset)) for subset in self._subsets]
        )

    def __iter__(self):
        return iter(self._subsets)

    def __len__(self) -> int:
        return len(self._subsets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self._subsets == other.subsets

    def __hash__(self) -> int:
        return hash(self._subsets)

    def __repr__(self) -> str:
        return f"SubsetFamily({[list(s) for s in self._subsets]})"


class WedgeAccumulator:
    """
    Partial power M^p in the d-fold tensor power of the Grassmann algebra.

    Keys are d-tuples of n-bit masks; the mask on axis t is the set of eta indices already
    multiplied into that tensor factor, all of popcount p. The value stored under a key is the
    coefficient of eta_{I_1} (x) ... (x) eta_{I_d}, each factor written in increasing order.
    """

    __slots__ = ("_order", "_dim", "_ring", "_level", "_terms")

    def __init__(self, order: int, dim: int, ring: ScalarRing, level: int, terms: dict):
        self._order = order
        self._dim = dim
        self._ring = ring
        self._level = level
        self._terms = terms

    @classmethod
    def start(cls, order: int, dim: int, ring: ScalarRing = RATIONAL) -> "WedgeAccumulator":
        """M^0 = 1."""
        return cls(order, dim, ring, 0, {(0,) * order: ring.one})

    @property
    def level(self) -> int:
        return self._level

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _free_moves(self, mask: int, strides: list[int], axis: int) -> list[tuple[int, int, bool]]:
        # (new bit, flat offset contribution, odd sign) for every eta not yet used on the axis
        moves = []
        for i in range(self._dim):
            bit = 1 << i
            if mask & bit:
                continue
            passed = (mask >> (i + 1)).bit_count()
            moves.append((bit, i * strides[axis], passed % 2 == 1))
        return moves

    def wedge(self, tensor: Hypermatrix) -> "WedgeAccumulator":
        """Return the accumulator for M^(p+1) = M^p * M."""
        if tensor.shape != (self._order, self._dim):
            raise InputError(f"shape mismatch: {tensor.shape} vs {(self._order, self._dim)}")
        if self._level >= self._dim:
            raise InputError("the accumulator already holds the top power")
        d, n = self._order, self._dim
        strides = [n ** (d - 1 - t) for t in range(d)]
        entries = tensor.entries
        zero = self._ring.zero
        move_cache: dict[tuple[int, int], list] = {}

        new_terms: dict = {}
        for key in sorted(self._terms):
            coeff = self._terms[key]
            if not coeff:
                continue
            per_axis = []
            for axis, mask in enumerate(key):
                cached = move_cache.get((axis, mask))
                if cached is None:
                    cached = move_cache[(axis, mask)] = self._free_moves(mask, strides, axis)
                per_axis.append(cached)
            for choice in itertools.product(*per_axis):
                flat = 0
                odd = False
                for _, contribution, flip in choice:
                    flat += contribution
                    odd ^= flip
                entry = entries[flat]
                if not entry:
                    continue
                new_key = tuple(mask | bit for mask, (bit, _, _) in zip(key, choice))
                term = coeff * entry
                previous = new_terms.get(new_key, zero)
                new_terms[new_key] = previous - term if odd else previous + term

        logger.debug("wedge level %d -> %d keys", self._level + 1, len(new_terms))
        return WedgeAccumulator(d, n, self._ring, self._level + 1, new_terms)

    def top_coefficient(self):
        """Coefficient of (eta_0 ... eta_{n-1})^{(x) d}; zero until level n is reached."""
        full = (1 << self._dim) - 1
        return self._terms.get((full,) * self._order, self._ring.zero)


def _wedge_state_entries(order: int, dim: int) -> int:
    return sum(math.comb(dim, p) ** order for p in range(dim + 1))


def _oracle_product_count(order: int, dim: int) -> int:
    free_axes = order - 1 if order % 2 == 0 else order
    return math.factorial(dim) ** free_axes


def _permutation_sign(perm: typing.Sequence[int]) -> int:
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def _oracle_chunk(tensor: Hypermatrix, leading_identity: bool, outer: range):
    """Signed permutation sum with the first free permutation restricted to `outer`."""
    d, n = tensor.order, tensor.dim
    perms = list(itertools.permutations(range(n)))
    signs = [_permutation_sign(p) for p in perms]
    strides = [n ** (d - 1 - t) for t in range(d)]
    first_free_axis = 1 if leading_identity else 0
    free_axes = list(range(first_free_axis, d))
    # contributions[axis][perm][row] = perm[row] * stride(axis)
    contributions = [[[p[i] * strides[axis] for i in range(n)] for p in perms] for axis in range(d)]
    base = [i * strides[0] if leading_identity else 0 for i in range(n)]
    entries = tensor.entries
    ring = tensor.ring
    total = ring.zero

    for head in outer:
        head_contrib = contributions[free_axes[0]][head]
        for tail in itertools.product(range(len(perms)), repeat=len(free_axes) - 1):
            sign = signs[head]
            for p in tail:
                sign *= signs[p]
            product = ring.one
            for i in range(n):
                flat = base[i] + head_contrib[i]
                for axis, p in zip(free_axes[1:], tail):
                    flat += contributions[axis][p][i]
                entry = entries[flat]
                if not entry:
                    product = None
                    break
                product = product * entry
            if product is None:
                continue
            total = total + product if sign > 0 else total - product
    return total


@requires("tensor", RequiresHypermatrix())
def det_permutation_oracle(
    tensor: Hypermatrix,
    max_products: typing.Optional[int] = None,
    threads: int = 1,
):
    """
    Hyperdeterminant as the signed sum over d-tuples of permutations.

    For even order the first permutation is fixed to the identity and the 1/n! factor is
    dropped, which gives the identical value. For odd order all d permutations are enumerated
    and the sum divided by n!, which is exactly zero.

    Args:
        tensor (Hypermatrix): Any order and dimension.
        max_products (int, optional): Enumeration budget; defaults to
            `options.MAX_PERMUTATION_PRODUCTS`.
        threads (int): Worker processes; chunks of the outer permutation are summed in order,
            so the result does not depend on this value.

    Returns:
        The hyperdeterminant, in the tensor's scalar ring.

    Raises:
        BudgetExceededError: If (n!)^(free axes) exceeds the budget.
    """
    budget = options.MAX_PERMUTATION_PRODUCTS if max_products is None else max_products
    count = _oracle_product_count(tensor.order, tensor.dim)
    if count > budget:
        raise BudgetExceededError(
            f"permutation oracle needs {count} signed products, budget is {budget}"
        )
    leading_identity = tensor.order % 2 == 0
    outer_size = math.factorial(tensor.dim)
    logger.debug("oracle: %d signed products, %d worker(s)", count, threads)

    if threads <= 1 or outer_size < 2 or count < options.PARALLEL_MIN_PRODUCTS:
        total = _oracle_chunk(tensor, leading_identity, range(outer_size))
    else:
        workers = min(threads, outer_size)
        bounds = [outer_size * w // workers for w in range(workers + 1)]
        chunks = [range(bounds[w], bounds[w + 1]) for w in range(workers)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(_oracle_chunk, [tensor] * workers, [leading_identity] * workers, chunks)
            )
        total = tensor.ring.zero
        for partial in partials:
            total = total + partial

    if not leading_identity:
        total = total * Fraction(1, math.factorial(tensor.dim))
    return total


@requires("tensor", RequiresHypermatrix())
@requires("tensor", RequiresEvenOrder())
def det_wedge(tensor: Hypermatrix, max_state_bytes: typing.Optional[int] = None):
    """
    Hyperdeterminant from the power M^n computed one wedge multiplication at a time.

    Args:
        tensor (Hypermatrix): Even order.
        max_state_bytes (int, optional): Memory budget for the widest level; defaults to
            `options.MAX_WEDGE_STATE_BYTES`.

    Returns:
        The coefficient of (eta_0 ... eta_{n-1})^{(x) d} in M^n, divided by n!.

    Raises:
        ContractViolation: If the order is odd.
        BudgetExceededError: If the estimated state size exceeds the budget.
    """
    budget = options.MAX_WEDGE_STATE_BYTES if max_state_bytes is None else max_state_bytes
    state_bytes = _wedge_state_entries(tensor.order, tensor.dim) * options.WEDGE_BYTES_PER_ENTRY
    if state_bytes > budget:
        raise BudgetExceededError(
            f"wedge state needs about {state_bytes} bytes, budget is {budget}"
        )
    accumulator = WedgeAccumulator.start(tensor.order, tensor.dim, tensor.ring)
    for _ in range(tensor.dim):
        accumulator = accumulator.wedge(tensor)
    return accumulator.top_coefficient() * Fraction(1, math.factorial(tensor.dim))


@requires("tensor", RequiresHypermatrix())
@requires("tensor", RequiresEvenOrder())
def expand_first_index(tensor: Hypermatrix):
    """
    Hyperdeterminant by expansion along the first index.

    Det(M) = sum over I with i_1 = 0 of (-1)^|I| M_I Det(M[I-bar]), where I-bar removes i_t from
    axis t and the indices are positions inside the current minor. Minors are memoized by
    their subset family, so each is expanded once.
    """
    d = tensor.order
    ring = tensor.ring
    memo: dict[tuple[tuple[int, ...], ...], typing.Any] = {}

    def minor(rows: tuple[tuple[int, ...], ...]):
        size = len(rows[0])
        if size == 0:
            return ring.one
        cached = memo.get(rows)
        if cached is not None:
            return cached
        first, rest = rows[0][0], rows[0][1:]
        total = ring.zero
        for positions in itertools.product(range(size), repeat=d - 1):
            entry = tensor[(first,) + tuple(rows[t + 1][p] for t, p in enumerate(positions))]
            if not entry:
                continue
            sub = (rest,) + tuple(
                rows[t + 1][:p] + rows[t + 1][p + 1:] for t, p in enumerate(positions)
            )
            term = entry * minor(sub)
            total = total - term if sum(positions) % 2 else total + term
        memo[rows] = total
        return total

    return minor(tuple(tuple(range(tensor.dim)) for _ in range(d)))


def hyperdet(tensor: Hypermatrix, algorithm: str = "auto", **budgets):
    """
    Dispatch to one of the hyperdeterminant algorithms.

    "auto" uses the oracle when the tensor is small ((n!)^(d-1) at most
    `options.AUTO_ORACLE_THRESHOLD`) or of odd order, and the wedge algorithm otherwise.

    Args:
        tensor (Hypermatrix): The tensor.
        algorithm (str): One of "oracle", "wedge", "expand", "auto".
        **budgets: max_products / threads for the oracle, max_state_bytes for the wedge.
    """
    if algorithm not in ALGORITHMS:
        raise InputError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if algorithm == "auto":
        small = _oracle_product_count(tensor.order, tensor.dim) <= options.AUTO_ORACLE_THRESHOLD
        algorithm = "oracle" if small or tensor.order % 2 else "wedge"
    logger.debug("hyperdet via %s on %r", algorithm, tensor)
    if algorithm == "oracle":
        return det_permutation_oracle(
            tensor,
            max_products=budgets.get("max_products"),
            threads=budgets.get("threads", 1),
        )
    if algorithm == "wedge":
        return det_wedge(tensor, max_state_bytes=budgets.get("max_state_bytes"))
    return expand_first_index(tensor)


def gl_action(g_list: typing.Sequence[Matrix], tensor: Hypermatrix) -> Hypermatrix:
    """
    Action of GL(n)^d: contract axis t of the tensor with g^(t).

    (g . M)_{i_1 ... i_d} = sum_J M_J prod_t g^(t)_{i_t j_t}; for d = 2 this is g M h^T.

    Args:
        g_list: d square matrices of size n (nested lists of rationals).
        tensor (Hypermatrix): The tensor acted on.

    Raises:
        InputError: On a wrong number of matrices or a wrong matrix size.
    """
    d, n = tensor.order, tensor.dim
    if len(g_list) != d:
        raise InputError(f"expected {d} matrices, got {len(g_list)}")
    matrices = []
    for t, g in enumerate(g_list):
        if len(g) != n or any(len(row) != n for row in g):
            raise InputError(f"matrix {t} is not {n} x {n}")
        matrices.append([[to_rational(x) for x in row] for row in g])

    ring = tensor.ring
    current = list(tensor.entries)
    for axis, g in enumerate(matrices):
        stride = n ** (d - 1 - axis)
        updated = []
        for flat in range(len(current)):
            i = (flat // stride) % n
            base = flat - i * stride
            value = ring.zero
            for j, coefficient in enumerate(g[i]):
                if coefficient:
                    value = value + coefficient * current[base + j * stride]
            updated.append(value)
        current = updated
    return Hypermatrix(d, n, current, ring)


def subtensor(tensor: Hypermatrix, family: SubsetFamily) -> Hypermatrix:
    """
    The sub-hypermatrix M[F] with entries M_{F_1[j_1], ..., F_d[j_d]}.

    Raises:
        InputError: If the family has the wrong order, unequal subset sizes, empty subsets,
            or indices outside the tensor.
    """
    if family.order != tensor.order:
        raise InputError(f"family has {family.order} axes, tensor has order {tensor.order}")
    size = family.size
    if size == 0:
        raise InputError("cannot cut an empty sub-hypermatrix")
    if any(i >= tensor.dim for subset in family for i in subset):
        raise InputError(f"family {family!r} references indices >= {tensor.dim}")
    subsets = family.subsets
    return Hypermatrix.from_function(
        tensor.order,
        size,
        lambda index: tensor[tuple(subsets[t][j] for t, j in enumerate(index))],
        tensor.ring,
    )


def split_sign(first: SubsetFamily, second: SubsetFamily) -> int:
    """
    epsilon(I, J): product over axes of the sign of the word I_s followed by J_s.

    Raises:
        InputError: If (I_s, J_s) is not a partition of {0, ..., n-1} on every axis.
    """
    if first.order != second.order:
        raise InputError(f"families have {first.order} and {second.order} axes")
    sign = 1
    for left, right in zip(first, second):
        word = left + right
        if sorted(word) != list(range(len(word))):
            raise InputError(f"{list(left)} and {list(right)} do not partition 0..{len(word) - 1}")
        sign *= _permutation_sign(word)
    return sign


def complementary_families(
    dim: int, order: int, size: int
) -> typing.Iterator[tuple[SubsetFamily, SubsetFamily]]:
    """All pairs (I, J) with (I_s, J_s) a partition of {0..n-1} and |I_s| = size on every axis."""
    choices = list(itertools.combinations(range(dim), size))
    for subsets in itertools.product(choices, repeat=order):
        family = SubsetFamily(subsets)
        yield family, family.complement(dim)


def _family_det(tensor: Hypermatrix, family: SubsetFamily, det: typing.Callable):
    if family.size == 0:
        return tensor.ring.one
    return det(subtensor(tensor, family))


@requires("first", RequiresEvenOrder())
def minor_summation(
    first: Hypermatrix,
    second: Hypermatrix,
    det: typing.Optional[typing.Callable] = None,
):
    """
    Det(M + N) by the minor summation formula.

    sum_r sum_{(I, J)} epsilon(I, J) Det(M[I]) Det(N[J]), over pairs of complementary
    subset families with |I_s| = r.

    Args:
        first (Hypermatrix): M, even order.
        second (Hypermatrix): N, same shape as M.
        det (Callable, optional): Hyperdeterminant used on the minors; defaults to det_wedge.
    """
    first._check_same_shape(second)
    det = det or det_wedge
    d, n = first.order, first.dim
    zero = first.ring.zero if first.ring is not RATIONAL else second.ring.zero
    total = zero
    for size in range(n + 1):
        for family, complement in complementary_families(n, d, size):
            left = _family_det(first, family, det)
            if not left:
                continue
            right = _family_det(second, complement, det)
            if not right:
                continue
            term = left * right
            total = total + term if split_sign(family, complement) > 0 else total - term
    return total


def det_classical(matrix: typing.Union[Matrix, Hypermatrix]) -> Fraction:
    """
    Determinant of a square rational matrix by fraction-free (Bareiss) elimination.

    Args:
        matrix: Nested lists, or an order-2 Hypermatrix over the rationals.
    """
    if isinstance(matrix, Hypermatrix):
        matrix = matrix.as_matrix()
    rows = [[to_rational(x) for x in row] for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise InputError("det_classical needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]
