"""
Module: hyperdet.hankel

Hankel hypermatrices (entries depending only on |I| = i_1 + ... + i_d) and their structured
evaluation.

The hyperdeterminant of order 2k of the Hankel hypermatrix (X_{|I|}), 0 <= i_t <= n-1, is a
homogeneous polynomial of degree n in the X_i:

    Det = sum_lambda c_lambda X_{lambda_1} ... X_{lambda_n}

and the c_lambda come from expanding the even power Delta(x)^{2k} of the Vandermonde
product: Det = (1/n!) sum_alpha d_alpha prod_i X_{alpha_i}, where d_alpha is the coefficient of
x^alpha in Delta^{2k}. The table therefore only depends on (n, k) and is cached.

The same expansion gives the top coefficient d_{n,k} (the coefficient of X_{k(n-1)}^n) and,
through the constant term of prod_{i != j} (1 - x_i/x_j)^k, Dyson's identity.
"""

import functools
import logging
import math
import numbers
import typing
from fractions import Fraction

import pandas as pd

from hyperdet import options
from hyperdet.contracts import RequiresMomentSequence
from hyperdet.core import BudgetExceededError, IdentityVerificationError, InputError, requires
from hyperdet.grassmann import Hypermatrix
from hyperdet.scalar import RATIONAL, ScalarRing, multinomial, ring_of, to_rational


__all__ = [
    "MomentSequence",
    "SparseMultiPoly",
    "CoefficientTable",
    "build_hankel",
    "vandermonde_power",
    "hankel_det_fast",
    "c_lambda_table",
    "top_coefficient",
    "top_coefficient_closed_form",
    "dyson_constant_term",
    "dyson_constant_term_general",
    "dyson_sign",
    "truncated_moments",
]

logger = logging.getLogger(__name__)

Exponents = tuple[int, ...]

NORMALIZATION = "Det = sum_lambda c_lambda * prod_i X_lambda_i; the 1/n! of the expansion is included"


class MomentSequence:
    """
    Moments m_0, ..., m_L as exact rationals.

    A Hankel hypermatrix of order d and dimension n needs L >= d (n - 1).
    """

    __slots__ = ("_values",)

    def __init__(self, values: typing.Iterable):
        converted = tuple(to_rational(v) for v in values)
        if not converted:
            raise InputError("a moment sequence needs at least m_0")
        self._values = converted

    @classmethod
    def from_function(cls, func: typing.Callable[[int], typing.Any], last: int) -> "MomentSequence":
        """Moments func(0), ..., func(last)."""
        return cls(func(j) for j in range(last + 1))

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self._values

    @property
    def last_index(self) -> int:
        return len(self._values) - 1

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, j: int) -> Fraction:
        return self._values[j]

    def __iter__(self):
        return iter(self._values)

    def covers(self, order: int, dim: int) -> bool:
        return self.last_index >= order * (dim - 1)

    def require_cover(self, order: int, dim: int) -> None:
        """
        Raises:
            InputError: If the sequence stops before m_{d(n-1)}.
        """
        if not self.covers(order, dim):
            raise InputError(
                f"moment sequence too short: order {order}, dim {dim} needs m_0..m_{order * (dim - 1)}, "
                f"got m_0..m_{self.last_index}"
            )

    def scaled(self, factor) -> "MomentSequence":
        factor = to_rational(factor)
        return MomentSequence(v * factor for v in self._values)

    def to_json(self) -> list[str]:
        return [str(v) for v in self._values]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MomentSequence):
            return NotImplemented
        return self._values == other.values

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"MomentSequence({self.to_json()})"


class SparseMultiPoly:
    """
    Polynomial in x_1..x_n stored as {exponent tuple: rational coefficient}.

    Zero coefficients are never stored. Coefficients are Python rationals (int or Fraction);
    integer expansions such as Delta^{2k} stay in int.
    """

    __slots__ = ("_nvars", "_terms")

    def __init__(self, nvars: int, terms: typing.Optional[typing.Mapping[Exponents, numbers.Rational]] = None):
        if nvars < 1:
            raise InputError(f"need at least one variable, got {nvars}")
        self._nvars = nvars
        self._terms: dict[Exponents, numbers.Rational] = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != nvars or any(e < 0 for e in exponents):
                raise InputError(f"bad exponent tuple {exponents} for {nvars} variables")
            if coeff:
                self._terms[exponents] = coeff

    @classmethod
    def one(cls, nvars: int) -> "SparseMultiPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparseMultiPoly":
        exponents = [0] * nvars
        exponents[index] = 1
        return cls(nvars, {tuple(exponents): 1})

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponents, numbers.Rational]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponents: typing.Sequence[int]) -> numbers.Rational:
        return self._terms.get(tuple(exponents), 0)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def evaluate(self, point: typing.Sequence) -> Fraction:
        point = [to_rational(p) for p in point]
        total = Fraction(0)
        for exponents, coeff in self._terms.items():
            value = Fraction(coeff)
            for base, power in zip(point, exponents):
                value *= base**power
            total += value
        return total

    def _check_budget(self, size: int, max_terms: typing.Optional[int]) -> None:
        budget = options.MAX_POLY_TERMS if max_terms is None else max_terms
        if size > budget:
            raise BudgetExceededError(f"sparse expansion reached {size} terms, budget is {budget}")

    def mul_difference(self, j: int, i: int, max_terms: typing.Optional[int] = None) -> "SparseMultiPoly":
        """Multiply by the linear factor (x_j - x_i)."""
        result: dict[Exponents, numbers.Rational] = {}
        for exponents, coeff in self._terms.items():
            raised = list(exponents)
            raised[j] += 1
            key = tuple(raised)
            result[key] = result.get(key, 0) + coeff
            raised[j] -= 1
            raised[i] += 1
            key = tuple(raised)
            result[key] = result.get(key, 0) - coeff
        self._check_budget(len(result), max_terms)
        product = SparseMultiPoly(self._nvars)
        product._terms = {e: c for e, c in result.items() if c}
        return product

    def __mul__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        if not isinstance(other, SparseMultiPoly):
            return NotImplemented
        if other.nvars != self._nvars:
            raise InputError(f"variable count mismatch: {self._nvars} vs {other.nvars}")
        result: dict[Exponents, numbers.Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                result[key] = result.get(key, 0) + c1 * c2
        self._check_budget(len(result), None)
        return SparseMultiPoly(self._nvars, result)

    def __add__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        if not isinstance(other, SparseMultiPoly):
            return NotImplemented
        result = dict(self._terms)
        for exponents, coeff in other.items():
            result[exponents] = result.get(exponents, 0) + coeff
        return SparseMultiPoly(self._nvars, result)

    def __neg__(self) -> "SparseMultiPoly":
        return SparseMultiPoly(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMultiPoly):
            return NotImplemented
        return self._nvars == other.nvars and self._terms == other.terms

    def __repr__(self) -> str:
        return f"SparseMultiPoly(nvars={self._nvars}, terms={len(self._terms)})"


class CoefficientTable:
    """
    The coefficients c_lambda^{n,k} of the Hankel hyperdeterminant as a polynomial in the X_i.

    Keys are weakly increasing n-tuples lambda with |lambda| = k n (n - 1); values already
    include the 1/n! normalization (see `normalization`).
    """

    def __init__(self, n: int, k: int, coefficients: typing.Mapping[Exponents, Fraction]):
        self.n = n
        self.k = k
        self.normalization = NORMALIZATION
        self._coefficients = {tuple(lam): Fraction(c) for lam, c in coefficients.items() if c}

    def __getitem__(self, lam: typing.Sequence[int]) -> Fraction:
        return self._coefficients.get(tuple(lam), Fraction(0))

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self._coefficients

    def __len__(self) -> int:
        return len(self._coefficients)

    def items(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self._coefficients.items())

    def as_dict(self) -> dict[Exponents, Fraction]:
        return dict(self._coefficients)

    def support_bounds_hold(self) -> bool:
        """(i-1) k <= lambda_i <= k (n + i - 2) for i = 1..n, and |lambda| = k n (n - 1)."""
        n, k = self.n, self.k
        for lam in self._coefficients:
            if sum(lam) != k * n * (n - 1):
                return False
            for i, part in enumerate(lam, start=1):
                if not (i - 1) * k <= part <= k * (n + i - 2):
                    return False
        return True

    def evaluate(self, values: typing.Sequence, ring: typing.Optional[ScalarRing] = None):
        """
        sum_lambda c_lambda prod_i values[lambda_i] in the ring of the values.

        Args:
            values: X_0, ..., X_L with L >= 2k(n-1); rationals or polynomials.
            ring (ScalarRing, optional): Ring of the values; inferred from values[0].
        """
        ring = ring or ring_of(values[0])
        total = ring.zero
        for lam, coeff in self._coefficients.items():
            product = ring.one
            for part in lam:
                product = product * values[part]
                if not product:
                    break
            if product:
                total = total + product * coeff
        return total

    def to_records(self) -> list[dict]:
        return [{"lambda": list(lam), "coeff": str(coeff)} for lam, coeff in self.items()]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            {
                "lambda": [tuple(lam) for lam, _ in self.items()],
                "coeff": [str(c) for _, c in self.items()],
            }
        )
        frame.attrs["n"] = self.n
        frame.attrs["k"] = self.k
        frame.attrs["normalization"] = self.normalization
        return frame

    def __repr__(self) -> str:
        return f"CoefficientTable(n={self.n}, k={self.k}, terms={len(self)})"


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")


@requires("moments", RequiresMomentSequence())
def build_hankel(moments: MomentSequence, n: int, d: int) -> Hypermatrix:
    """
    The Hankel hypermatrix of order d and dimension n with entries m_{|I|}.

    Raises:
        InputError: If the moments stop before m_{d(n-1)}.
    """
    moments.require_cover(d, n)
    return Hypermatrix.from_function(d, n, lambda index: moments[sum(index)], RATIONAL)


@functools.lru_cache(maxsize=32)
def _vandermonde_power_cached(n: int, k: int, max_terms: typing.Optional[int]) -> SparseMultiPoly:
    poly = SparseMultiPoly.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(2 * k):
                poly = poly.mul_difference(j, i, max_terms)
    logger.debug("Delta^%d in %d variables: %d terms", 2 * k, n, len(poly))
    return poly


def vandermonde_power(n: int, k: int, max_terms: typing.Optional[int] = None) -> SparseMultiPoly:
    """
    Expansion of prod_{i<j} (x_j - x_i)^{2k}, one linear factor at a time in fixed (i, j) order.

    Raises:
        BudgetExceededError: If an intermediate product has more than max_terms terms
            (default `options.MAX_POLY_TERMS`).
    """
    _check_nk(n, k)
    return _vandermonde_power_cached(n, k, max_terms)


def c_lambda_table(n: int, k: int, max_terms: typing.Optional[int] = None) -> CoefficientTable:
    """
    Merge the monomials of Delta^{2k} by sorted exponent tuple and divide by n!.

    Returns:
        CoefficientTable: c_lambda^{n,k} with the normalization recorded on the table.
    """
    _check_nk(n, k)
    return _c_lambda_table_cached(n, k, max_terms)


@functools.lru_cache(maxsize=32)
def _c_lambda_table_cached(n: int, k: int, max_terms: typing.Optional[int]) -> CoefficientTable:
    poly = vandermonde_power(n, k, max_terms)
    merged: dict[Exponents, Fraction] = {}
    for exponents, coeff in poly.items():
        lam = tuple(sorted(exponents))
        merged[lam] = merged.get(lam, 0) + coeff
    scale = Fraction(1, math.factorial(n))
    return CoefficientTable(n, k, {lam: c * scale for lam, c in merged.items()})


@requires("moments", RequiresMomentSequence())
def hankel_det_fast(moments: MomentSequence, n: int, k: int, max_terms: typing.Optional[int] = None) -> Fraction:
    """
    Det_{2k}(m_{|I|}), 0 <= i_t <= n-1, through the expansion of Delta^{2k}.

    Raises:
        InputError: If the moments stop before m_{2k(n-1)}.
    """
    _check_nk(n, k)
    moments.require_cover(2 * k, n)
    return c_lambda_table(n, k, max_terms).evaluate(moments.values, RATIONAL)


def dyson_sign(n: int, k: int) -> int:
    """Sign relating prod_{i != j}(1 - x_i/x_j)^k to Delta^{2k} / prod x_i^{k(n-1)}."""
    return -1 if (k * n * (n - 1) // 2) % 2 else 1


def top_coefficient_closed_form(n: int, k: int) -> Fraction:
    """d_{n,k} = (-1)^{k n (n-1) / 2} multinomial(k, ..., k) / n!."""
    _check_nk(n, k)
    return dyson_sign(n, k) * Fraction(multinomial([k] * n), math.factorial(n))


def top_coefficient(n: int, k: int, max_terms: typing.Optional[int] = None) -> Fraction:
    """
    d_{n,k}, the coefficient of X_{k(n-1)}^n in the Hankel hyperdeterminant.

    Read from the coefficient table and checked against the closed form.

    Raises:
        IdentityVerificationError: If the expansion and the closed form disagree.
    """
    table = c_lambda_table(n, k, max_terms)
    value = table[(k * (n - 1),) * n]
    expected = top_coefficient_closed_form(n, k)
    if value != expected:
        raise IdentityVerificationError(
            f"top coefficient d_{{{n},{k}}}: expansion gives {value}, closed form {expected}"
        )
    return value


def dyson_constant_term_general(
    exponents: typing.Sequence[int],
    check: typing.Optional[bool] = None,
    max_terms: typing.Optional[int] = None,
) -> Fraction:
    """
    Constant term of prod_{i != j} (1 - x_i/x_j)^{a_i}.

    The closed form is the multinomial coefficient (a_1 + ... + a_n; a_1, ..., a_n). With
    `check` (default: n <= 3) the constant term is also extracted from the expansion of
    prod_{i != j} (x_j - x_i)^{a_i}, the Laurent product with denominators cleared, at the
    monomial prod_j x_j^{A - a_j}.

    Raises:
        IdentityVerificationError: If the two computations disagree.
    """
    a = [int(e) for e in exponents]
    if not a or any(e < 0 for e in a):
        raise InputError(f"exponents must be non-negative and non-empty, got {list(exponents)}")
    n = len(a)
    closed = Fraction(multinomial(a))
    if check is None:
        check = n <= 3
    if not check:
        return closed
    if n == 1:
        direct = Fraction(1)
    else:
        poly = SparseMultiPoly.one(n)
        for i in range(n):
            for j in range(n):
                if i != j:
                    for _ in range(a[i]):
                        poly = poly.mul_difference(j, i, max_terms)
        total = sum(a)
        direct = Fraction(poly.coefficient([total - a_j for a_j in a]))
    if direct != closed:
        raise IdentityVerificationError(
            f"Dyson constant term for {a}: expansion gives {direct}, multinomial {closed}"
        )
    return closed


def dyson_constant_term(n: int, k: int, max_terms: typing.Optional[int] = None) -> Fraction:
    """
    C_{n,k} = C.T. prod_{i != j} (1 - x_i/x_j)^k, computed by expansion and by the multinomial
    (kn; k, ..., k), and related to the top Hankel coefficient by
    C_{n,k} = (-1)^{k n (n-1) / 2} n! d_{n,k}.

    Raises:
        IdentityVerificationError: If any of the three values is inconsistent.
    """
    _check_nk(n, k)
    value = dyson_constant_term_general([k] * n, check=True, max_terms=max_terms)
    top = top_coefficient(n, k, max_terms)
    related = dyson_sign(n, k) * math.factorial(n) * top
    if related != value:
        raise IdentityVerificationError(
            f"C_{{{n},{k}}} = {value} but sign * n! * d_{{{n},{k}}} = {related}"
        )
    logger.info("Dyson C_{%d,%d} = %s, d = %s", n, k, value, top)
    return value


@requires("moments", RequiresMomentSequence())
def truncated_moments(moments: MomentSequence, n: int, k: int, top) -> MomentSequence:
    """
    Copy of the moments with m_{k(n-1)} replaced by `top` and every later moment set to zero,
    extended with zeros up to m_{2k(n-1)}.
    """
    _check_nk(n, k)
    cut = k * (n - 1)
    last = 2 * k * (n - 1)
    values = [moments[j] if j < len(moments) else Fraction(0) for j in range(cut)]
    values.append(to_rational(top))
    values.extend(Fraction(0) for _ in range(cut + 1, last + 1))
    return MomentSequence(values)
