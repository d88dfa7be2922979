"""
Module: hyperdet.selberg

Beta-moment hypermatrices for the Selberg and Aomoto integrals, their closed forms, and the
identities that relate them.

Every tensor here is normalized by B(a, b): an entry B(a + i, b + j) is stored as
B(a + i, b + j) / B(a, b) = (a)_i (b)_j / (a + b)_{i+j}, so all quantities are exact rationals
or polynomials in y with rational coefficients, for rational a, b > 0 and integer k, n >= 1.

Key Components:
- SelbergParams, NormalizedTensorLabel: parameter set and tensor labels.
- build_selberg_tensor, build_aomoto_tensor, build_symmetric_selberg_tensor.
- selberg_closed_form_normalized, aomoto_closed_form (terminating 2F1 form, cross-checked
  against sympy's Jacobi polynomial).
- verify_*: contiguity, symmetric form, a <-> b symmetry, reflection y -> 1 - y, the
  minor expansion of the Aomoto tensor, and the Dyson ending of the Selberg evaluation.

Determinants accept `algorithm`: "hankel" uses the Vandermonde fast path, anything else is
passed to `hyperdet.grassmann.hyperdet`.
"""

import dataclasses
import logging
import typing
from fractions import Fraction

import sympy
from sympy.polys.orthopolys import jacobi_poly

from hyperdet.contracts import RequiresSelbergParams
from hyperdet.core import IdentityVerificationError, InputError, requires
from hyperdet.grassmann import (
    Hypermatrix,
    gl_action,
    hyperdet,
    identity_matrix,
    minor_summation,
)
from hyperdet.hankel import (
    MomentSequence,
    build_hankel,
    c_lambda_table,
    hankel_det_fast,
    top_coefficient,
)
from hyperdet.scalar import POLY, RATIONAL, Y, UniPoly, binomial, factorial, pochhammer, to_rational


__all__ = [
    "SelbergParams",
    "NormalizedTensorLabel",
    "beta_moment_normalized",
    "selberg_moments",
    "aomoto_moments",
    "build_selberg_tensor",
    "build_shifted_selberg_tensor",
    "build_aomoto_tensor",
    "build_symmetric_selberg_tensor",
    "selberg_closed_form_normalized",
    "aomoto_closed_form",
    "aomoto_hypergeometric",
    "monic_jacobi",
    "pascal_sign_matrix",
    "selberg_det",
    "aomoto_det",
    "verify_beta_contiguity",
    "verify_symmetric_form",
    "verify_selberg_symmetry",
    "verify_aomoto_reflection",
    "verify_aomoto_minor_expansion",
    "dyson_ending_check",
]

logger = logging.getLogger(__name__)

TensorKind = typing.Literal["selberg", "aomoto", "selberg-symmetric"]


@dataclasses.dataclass(frozen=True)
class SelbergParams:
    """a, b > 0 rational; k, n >= 1 integers."""

    a: Fraction
    b: Fraction
    k: int
    n: int

    def __post_init__(self):
        a, b = to_rational(self.a), to_rational(self.b)
        if a <= 0 or b <= 0:
            raise InputError(f"a and b must be positive, got a={a}, b={b}")
        k_value, n_value = to_rational(self.k), to_rational(self.n)
        if k_value.denominator != 1 or k_value < 1:
            raise InputError(f"k must be a positive integer, got {self.k}")
        if n_value.denominator != 1 or n_value < 1:
            raise InputError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", int(k_value))
        object.__setattr__(self, "n", int(n_value))

    @classmethod
    def create(cls, a, b, k, n) -> "SelbergParams":
        """
        Validate and normalize a parameter set.

        Args:
            a, b: Positive rationals, as ints, Fractions or "p/q" strings.
            k, n: Positive integers, also accepted as integral strings or Fractions.

        Returns:
            SelbergParams: The normalized parameters.

        Raises:
            InputError: If a or b is not a positive rational or k, n are not positive integers.
        """
        return cls(a, b, k, n)

    @property
    def order(self) -> int:
        return 2 * self.k

    @property
    def last_moment(self) -> int:
        """Largest index sum |I| in an order-2k, dimension-n tensor."""
        return 2 * self.k * (self.n - 1)

    def swapped(self) -> "SelbergParams":
        return SelbergParams(self.b, self.a, self.k, self.n)

    def label(self, kind: TensorKind) -> "NormalizedTensorLabel":
        return NormalizedTensorLabel(kind, self)

    def as_dict(self) -> dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "k": str(self.k), "n": str(self.n)}

    def __str__(self) -> str:
        return f"a={self.a}, b={self.b}, k={self.k}, n={self.n}"


@dataclasses.dataclass(frozen=True)
class NormalizedTensorLabel:
    kind: TensorKind
    params: SelbergParams

    def __str__(self) -> str:
        p = self.params
        name = {"selberg": "S", "aomoto": "A", "selberg-symmetric": "S^Sym"}[self.kind]
        suffix = "(y)" if self.kind == "aomoto" else ""
        return f"{name}_{p.n}({p.a},{p.b};{p.k}){suffix}"


def _beta_ratio(a: Fraction, b: Fraction, i: int, j: int) -> Fraction:
    """B(a + i, b + j) / B(a, b)."""
    return pochhammer(a, i) * pochhammer(b, j) / pochhammer(a + b, i + j)


@requires("p", RequiresSelbergParams())
def beta_moment_normalized(p: SelbergParams, m: int) -> Fraction:
    """B(a + m, b) / B(a, b) = (a)_m / (a + b)_m."""
    if m < 0:
        raise InputError(f"moment index must be non-negative, got {m}")
    return pochhammer(p.a, m) / pochhammer(p.a + p.b, m)


@requires("p", RequiresSelbergParams())
def selberg_moments(p: SelbergParams, extra: int = 0) -> MomentSequence:
    """Normalized Beta moments m_0, ..., m_{2k(n-1) + extra}."""
    return MomentSequence.from_function(lambda m: beta_moment_normalized(p, m), p.last_moment + extra)


@requires("p", RequiresSelbergParams())
def aomoto_moments(p: SelbergParams) -> list[UniPoly]:
    """X_m = m_m y - m_{m+1}, the moments of (y - x) against the Beta weight."""
    moments = selberg_moments(p, extra=1)
    return [UniPoly.linear(moments[m], -moments[m + 1]) for m in range(p.last_moment + 1)]


@requires("p", RequiresSelbergParams())
def build_selberg_tensor(p: SelbergParams) -> Hypermatrix:
    """S_n(a, b; k) / B(a, b): the order-2k Hankel hypermatrix of normalized Beta moments."""
    return build_hankel(selberg_moments(p), p.n, p.order)


@requires("p", RequiresSelbergParams())
def build_shifted_selberg_tensor(p: SelbergParams) -> Hypermatrix:
    """Hankel hypermatrix of the shifted moments m_{|I|+1}."""
    moments = selberg_moments(p, extra=1)
    return build_hankel(MomentSequence(moments.values[1:]), p.n, p.order)


@requires("p", RequiresSelbergParams())
def build_aomoto_tensor(p: SelbergParams) -> Hypermatrix:
    """
    A_n^{a,b;k}(y) / B(a, b), with entries m_{|I|} (y - (a + |I|) / (a + b + |I|)).

    Returns:
        Hypermatrix: Order 2k over the polynomial ring; each entry has degree 1.
    """
    values = aomoto_moments(p)
    return Hypermatrix.from_function(p.order, p.n, lambda index: values[sum(index)], POLY)


@requires("p", RequiresSelbergParams())
def build_symmetric_selberg_tensor(p: SelbergParams) -> Hypermatrix:
    """
    S^Sym_n(a, b; k) / B(a, b): the entry at (I, J), I the first k indices and J the last k,
    is (a)_{|I|} (b)_{|J|} / (a + b)_{|I| + |J|}.
    """
    k = p.k
    return Hypermatrix.from_function(
        p.order,
        p.n,
        lambda index: _beta_ratio(p.a, p.b, sum(index[:k]), sum(index[k:])),
        RATIONAL,
    )


@requires("p", RequiresSelbergParams())
def selberg_closed_form_normalized(p: SelbergParams) -> Fraction:
    """
    S_n(a, b; k) / (n! B(a, b)^n) in gamma-free form:

        (1/n!) prod_{j=0}^{n-1} (a)_{jk} (b)_{jk} ((j+1)k)! / ((a+b)_{(n+j-1)k} k!)
    """
    a, b, k, n = p.a, p.b, p.k, p.n
    value = Fraction(1, factorial(n))
    for j in range(n):
        value *= pochhammer(a, j * k) * pochhammer(b, j * k) * factorial((j + 1) * k)
        value /= pochhammer(a + b, (n + j - 1) * k) * factorial(k)
    return value


@requires("p", RequiresSelbergParams())
def aomoto_hypergeometric(p: SelbergParams) -> UniPoly:
    """
    The terminating 2F1 form of the normalized Aomoto integral:

        (-1)^n Sel (a/k)_n / (c)_n sum_{i=0}^{n} (-n)_i (c)_i / ((a/k)_i i!) y^i,

    with c = (a + b)/k + n - 1 and Sel = selberg_closed_form_normalized(p).
    """
    n = p.n
    alpha = p.a / p.k
    c = (p.a + p.b) / p.k + n - 1
    prefactor = (-1) ** n * selberg_closed_form_normalized(p) * pochhammer(alpha, n) / pochhammer(c, n)
    return UniPoly(
        prefactor * pochhammer(-n, i) * pochhammer(c, i) / (pochhammer(alpha, i) * factorial(i))
        for i in range(n + 1)
    )


def monic_jacobi(n: int, alpha, beta) -> UniPoly:
    """
    Monic Jacobi polynomial P_n^{alpha, beta}(x), orthogonal for (1 - x)^alpha (1 + x)^beta
    on (-1, 1), with x written as y.

    Args:
        n (int): Degree, n >= 0.
        alpha, beta: Rational parameters, both greater than -1.

    Returns:
        UniPoly: sympy's Jacobi polynomial divided by its leading coefficient.
    """
    alpha, beta = to_rational(alpha), to_rational(beta)
    if alpha <= -1 or beta <= -1:
        raise InputError(f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")
    if n < 0:
        raise InputError(f"degree must be non-negative, got {n}")
    poly = jacobi_poly(
        n,
        sympy.Rational(alpha.numerator, alpha.denominator),
        sympy.Rational(beta.numerator, beta.denominator),
        Y,
        polys=True,
    )
    return UniPoly.from_sympy(poly.monic())


@requires("p", RequiresSelbergParams())
def aomoto_closed_form(p: SelbergParams) -> UniPoly:
    """
    Exact normalized Aomoto polynomial in y.

    Built from the terminating 2F1 series and cross-checked against the monic Jacobi form
    (-2)^{-n} Sel P_n^{a/k - 1, b/k - 1}(1 - 2y).

    Raises:
        IdentityVerificationError: If the two constructions disagree.
    """
    series = aomoto_hypergeometric(p)
    jacobi = monic_jacobi(p.n, p.a / p.k - 1, p.b / p.k - 1).compose(UniPoly.linear(-2, 1))
    jacobi_form = jacobi * (Fraction(-1, 2) ** p.n * selberg_closed_form_normalized(p))
    if series != jacobi_form:
        raise IdentityVerificationError(
            f"Aomoto closed form for {p}: 2F1 series {series} but Jacobi form {jacobi_form}"
        )
    return series


def pascal_sign_matrix(n: int) -> list[list[Fraction]]:
    """g_ij = (-1)^j binomial(i, j), 0 <= i, j < n; lower triangular with det (-1)^{n(n-1)/2}."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    return [[Fraction((-1) ** j * binomial(i, j)) for j in range(n)] for i in range(n)]


@requires("p", RequiresSelbergParams())
def selberg_det(p: SelbergParams, algorithm: str = "auto", **budgets) -> Fraction:
    """Det of the normalized Selberg tensor."""
    if algorithm == "hankel":
        return hankel_det_fast(selberg_moments(p), p.n, p.k, budgets.get("max_terms"))
    return hyperdet(build_selberg_tensor(p), algorithm, **budgets)


@requires("p", RequiresSelbergParams())
def aomoto_det(p: SelbergParams, algorithm: str = "auto", **budgets) -> UniPoly:
    """Det of the normalized Aomoto tensor, a polynomial of degree n in y."""
    if algorithm == "hankel":
        table = c_lambda_table(p.n, p.k, budgets.get("max_terms"))
        return table.evaluate(aomoto_moments(p), POLY)
    value = hyperdet(build_aomoto_tensor(p), algorithm, **budgets)
    return value if isinstance(value, UniPoly) else UniPoly.constant(value)


def _reported(name: str, ok: bool, lhs, rhs) -> bool:
    if ok:
        logger.info("%s holds: %s", name, lhs)
    else:
        logger.warning("%s fails: %s != %s", name, lhs, rhs)
    return ok


@requires("p", RequiresSelbergParams())
def verify_beta_contiguity(p: SelbergParams, n: int) -> bool:
    """sum_{i=0}^{n} (-1)^i C(n, i) (a)_i / (a + b)_i = (b)_n / (a + b)_n."""
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    lhs = sum(
        ((-1) ** i * binomial(n, i) * pochhammer(p.a, i) / pochhammer(p.a + p.b, i) for i in range(n + 1)),
        Fraction(0),
    )
    rhs = pochhammer(p.b, n) / pochhammer(p.a + p.b, n)
    return _reported(f"contiguity n={n} ({p})", lhs == rhs, lhs, rhs)


@requires("p", RequiresSelbergParams())
def verify_symmetric_form(p: SelbergParams, algorithm: str = "auto", **budgets) -> bool:
    """
    Det(S^Sym) = (-1)^{k n (n-1) / 2} Det(S), and the action of (1, ..., 1, g, ..., g)
    (k identities, k sign-Pascal matrices) maps S^Sym onto S entry by entry.
    """
    symmetric = build_symmetric_selberg_tensor(p)
    plain = build_selberg_tensor(p)
    g = pascal_sign_matrix(p.n)
    acted = gl_action([identity_matrix(p.n)] * p.k + [g] * p.k, symmetric)
    if acted != plain:
        logger.warning("sign-Pascal action does not map S^Sym onto S for %s", p)
        return False
    sign = -1 if (p.k * p.n * (p.n - 1) // 2) % 2 else 1
    lhs = sign * hyperdet(symmetric, algorithm, **budgets)
    rhs = hyperdet(plain, algorithm, **budgets)
    return _reported(f"symmetric form ({p})", lhs == rhs, lhs, rhs)


@requires("p", RequiresSelbergParams())
def verify_selberg_symmetry(p: SelbergParams, algorithm: str = "auto", **budgets) -> bool:
    """Det S_n(a, b; k) = Det S_n(b, a; k)."""
    lhs = selberg_det(p, algorithm, **budgets)
    rhs = selberg_det(p.swapped(), algorithm, **budgets)
    return _reported(f"a <-> b symmetry ({p})", lhs == rhs, lhs, rhs)


@requires("p", RequiresSelbergParams())
def verify_aomoto_reflection(p: SelbergParams, algorithm: str = "auto", **budgets) -> bool:
    """
    Det A^{a,b}(y) = (-1)^n Det A^{b,a}(1 - y) as polynomials, and entrywise: the action of
    2k sign-Pascal matrices maps A^{b,a}(1 - y) onto -A^{a,b}(y).
    """
    reflect = UniPoly.linear(-1, 1)
    mirrored = build_aomoto_tensor(p.swapped()).map(lambda e: e.compose(reflect))
    g = pascal_sign_matrix(p.n)
    if gl_action([g] * p.order, mirrored) != -build_aomoto_tensor(p):
        logger.warning("sign-Pascal action does not reflect the Aomoto tensor for %s", p)
        return False
    lhs = aomoto_det(p, algorithm, **budgets)
    rhs = aomoto_det(p.swapped(), algorithm, **budgets).compose(reflect) * (-1) ** p.n
    return _reported(f"reflection y -> 1 - y ({p})", lhs == rhs, lhs, rhs)


@requires("p", RequiresSelbergParams())
def verify_aomoto_minor_expansion(p: SelbergParams, algorithm: str = "auto", **budgets) -> bool:
    """
    A(y) = y S - S', S' the Hankel tensor of the shifted moments m_{|I|+1}. Evaluate Det A by
    the minor summation formula over (y S, -S') and compare with the direct determinant; the
    y^n coefficient must also be Det S.
    """

    def det(tensor):
        return hyperdet(tensor, algorithm, **budgets)

    expanded = minor_summation(
        build_selberg_tensor(p).scale(UniPoly.y()), -build_shifted_selberg_tensor(p), det
    )
    if not isinstance(expanded, UniPoly):
        expanded = UniPoly.constant(expanded)
    direct = aomoto_det(p, algorithm, **budgets)
    if expanded.coefficient(p.n) != selberg_det(p, algorithm, **budgets):
        logger.warning("leading coefficient of Det A is not Det S for %s", p)
        return False
    return _reported(f"Aomoto minor expansion ({p})", expanded == direct, expanded, direct)


@requires("p", RequiresSelbergParams())
def dyson_ending_check(p: SelbergParams, max_terms: typing.Optional[int] = None) -> bool:
    """
    Det((-k(n-1))_{|I|}) = d_{n,k} (k(n-1))!^n, and the normalized Selberg determinant from
    the fast path equals the closed form.
    """
    n, k = p.n, p.k
    shift = k * (n - 1)
    falling = MomentSequence.from_function(lambda j: pochhammer(-shift, j), 2 * shift)
    lhs = hankel_det_fast(falling, n, k, max_terms)
    rhs = top_coefficient(n, k, max_terms) * factorial(shift) ** n
    if not _reported(f"Dyson ending n={n}, k={k}", lhs == rhs, lhs, rhs):
        return False
    fast = hankel_det_fast(selberg_moments(p), n, k, max_terms)
    closed = selberg_closed_form_normalized(p)
    return _reported(f"Selberg ratio ({p})", fast == closed, fast, closed)

