"""
Module: hyperdet.quadrature

Floating point oracle for the integral side of the Selberg and Aomoto identities.

For positive integer a, b and k the integrands

    |Delta(x)|^{2k} prod_i x_i^{a-1} (1 - x_i)^{b-1}            (Selberg)
    |Delta(x)|^{2k} prod_i (y - x_i) x_i^{a-1} (1 - x_i)^{b-1}   (Aomoto)

are polynomials, so a tensor-product Gauss-Legendre rule of high enough order integrates
them exactly up to rounding. The exact values n! B(a, b)^n Det(...) come from the algebraic
side and are compared with `agrees`.
"""

import dataclasses
import itertools
import logging
import math
import typing
from fractions import Fraction

import numpy as np

from hyperdet import options
from hyperdet.contracts import RequiresPositiveInteger
from hyperdet.core import BudgetExceededError, InputError, requires
from hyperdet.scalar import factorial, to_rational
from hyperdet.selberg import SelbergParams, aomoto_det, selberg_det


__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "required_order",
    "integrate_selberg_numeric",
    "integrate_aomoto_numeric",
    "beta_integer",
    "selberg_integral_exact",
    "aomoto_integral_exact",
    "agrees",
]

logger = logging.getLogger(__name__)

_MAX_NEWTON_STEPS = 100


@dataclasses.dataclass(frozen=True)
class QuadratureRule:
    """m-point rule on (0, 1): nodes strictly increasing, weights summing to 1."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def exact_degree(self) -> int:
        return 2 * self.order - 1

    def integrate(self, func: typing.Callable[[np.ndarray], np.ndarray]) -> float:
        """Apply the rule to a vectorized integrand on (0, 1)."""
        return math.fsum(self.weights * func(self.nodes))


def _legendre_with_derivative(m: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    previous = np.ones_like(x)
    current = x.copy()
    for j in range(2, m + 1):
        previous, current = current, ((2 * j - 1) * x * current - (j - 1) * previous) / j
    derivative = m * (x * current - previous) / (x * x - 1)
    return current, derivative


def gauss_legendre(m: int) -> QuadratureRule:
    """
    m-point Gauss-Legendre rule mapped to (0, 1).

    Roots of P_m are found by Newton iteration on the three-term recurrence, started from the
    Chebyshev-like guesses cos(pi (i - 1/4) / (m + 1/2)).

    Args:
        m (int): Number of nodes, 1 <= m <= `options.MAX_QUADRATURE_ORDER`.

    Raises:
        InputError: If m is out of range.
    """
    if not 1 <= m <= options.MAX_QUADRATURE_ORDER:
        raise InputError(f"quadrature order must be in 1..{options.MAX_QUADRATURE_ORDER}, got {m}")
    x = np.cos(np.pi * (np.arange(1, m + 1) - 0.25) / (m + 0.5))
    for _ in range(_MAX_NEWTON_STEPS):
        value, derivative = _legendre_with_derivative(m, x)
        delta = value / derivative
        x = x - delta
        if np.max(np.abs(delta)) <= options.NEWTON_TOL:
            break
    else:
        logger.debug("Newton iteration for m=%d stopped after %d steps", m, _MAX_NEWTON_STEPS)
    _, derivative = _legendre_with_derivative(m, x)
    weights = 2.0 / ((1.0 - x * x) * derivative * derivative)
    ordering = np.argsort(x)
    return QuadratureRule(nodes=(x[ordering] + 1.0) / 2.0, weights=weights[ordering] / 2.0, order=m)


def required_order(degree: int) -> int:
    """Smallest m with 2m - 1 >= degree."""
    return max(1, (degree + 2) // 2)


def _resolve_order(degree: int, n: int, m: typing.Optional[int]) -> int:
    needed = required_order(degree)
    if m is None:
        m = needed
    elif 2 * m - 1 < degree:
        raise InputError(
            f"quadrature order {m} is exact to degree {2 * m - 1}, integrand has degree {degree} per variable"
        )
    if m > options.MAX_QUADRATURE_ORDER:
        raise InputError(f"quadrature order {m} exceeds {options.MAX_QUADRATURE_ORDER}")
    if m**n > options.MAX_QUADRATURE_NODES:
        raise BudgetExceededError(
            f"tensor grid of {m}^{n} nodes exceeds the budget of {options.MAX_QUADRATURE_NODES}"
        )
    return m


def _tensor_integral(
    n: int,
    rule: QuadratureRule,
    integrand: typing.Callable[[np.ndarray], np.ndarray],
) -> float:
    """
    Integrate over (0, 1)^n, one chunk per node of the first coordinate.

    The integrand receives points of shape (count, n); chunk sums are merged in node order with
    compensated summation.
    """
    combos = list(itertools.product(range(rule.order), repeat=n - 1))
    index = np.array(combos, dtype=int).reshape(len(combos), n - 1)
    rest_points = rule.nodes[index]
    rest_weights = np.prod(rule.weights[index], axis=1)
    partials = []
    for node, weight in zip(rule.nodes, rule.weights):
        first = np.full((rest_points.shape[0], 1), node)
        points = np.hstack([first, rest_points])
        partials.append(math.fsum(weight * rest_weights * integrand(points)))
    return math.fsum(partials)


def _selberg_weight(points: np.ndarray, a: int, b: int, k: int) -> np.ndarray:
    n = points.shape[1]
    values = np.prod(points ** (a - 1) * (1.0 - points) ** (b - 1), axis=1)
    for i in range(n):
        for j in range(i + 1, n):
            values = values * (points[:, j] - points[:, i]) ** (2 * k)
    return values


@requires("a", RequiresPositiveInteger("a"))
@requires("b", RequiresPositiveInteger("b"))
@requires("k", RequiresPositiveInteger("k"))
@requires("n", RequiresPositiveInteger("n"))
def integrate_selberg_numeric(a: int, b: int, k: int, n: int, m: typing.Optional[int] = None) -> float:
    """
    The Selberg integral over (0, 1)^n by tensor-product Gauss-Legendre quadrature.

    Args:
        a, b, k, n: Positive integers.
        m (int, optional): Nodes per axis; defaults to the smallest exact order for the
            per-variable degree 2k(n-1) + a + b - 2.

    Raises:
        InputError: If m is too small for the degree.
        BudgetExceededError: If m^n exceeds `options.MAX_QUADRATURE_NODES`.
    """
    degree = 2 * k * (n - 1) + a + b - 2
    m = _resolve_order(degree, n, m)
    logger.debug("Selberg quadrature a=%d b=%d k=%d n=%d with %d^%d nodes", a, b, k, n, m, n)
    return _tensor_integral(n, gauss_legendre(m), lambda pts: _selberg_weight(pts, a, b, k))


@requires("a", RequiresPositiveInteger("a"))
@requires("b", RequiresPositiveInteger("b"))
@requires("k", RequiresPositiveInteger("k"))
@requires("n", RequiresPositiveInteger("n"))
def integrate_aomoto_numeric(a: int, b: int, k: int, n: int, y, m: typing.Optional[int] = None) -> float:
    """
    The Aomoto integral, the Selberg integrand times prod_i (y - x_i), at a real y.

    Raises:
        InputError: If m is too small for the degree 2k(n-1) + a + b - 1.
        BudgetExceededError: If m^n exceeds `options.MAX_QUADRATURE_NODES`.
    """
    y = float(to_rational(y)) if isinstance(y, str) else float(y)
    degree = 2 * k * (n - 1) + a + b - 1
    m = _resolve_order(degree, n, m)
    logger.debug("Aomoto quadrature at y=%g with %d^%d nodes", y, m, n)

    def integrand(points: np.ndarray) -> np.ndarray:
        return _selberg_weight(points, a, b, k) * np.prod(y - points, axis=1)

    return _tensor_integral(n, gauss_legendre(m), integrand)


@requires("a", RequiresPositiveInteger("a"))
@requires("b", RequiresPositiveInteger("b"))
def beta_integer(a: int, b: int) -> Fraction:
    """B(a, b) = (a-1)! (b-1)! / (a+b-1)! for positive integers."""
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def selberg_integral_exact(a: int, b: int, k: int, n: int, algorithm: str = "auto") -> Fraction:
    """n! B(a, b)^n Det(normalized Selberg tensor), exact."""
    params = SelbergParams.create(a, b, k, n)
    return factorial(n) * beta_integer(a, b) ** n * selberg_det(params, algorithm)


def aomoto_integral_exact(a: int, b: int, k: int, n: int, y, algorithm: str = "auto") -> Fraction:
    """n! B(a, b)^n Det(normalized Aomoto tensor) evaluated at a rational y."""
    params = SelbergParams.create(a, b, k, n)
    return factorial(n) * beta_integer(a, b) ** n * aomoto_det(params, algorithm)(to_rational(y))


def agrees(
    numeric: float,
    exact,
    rtol: typing.Optional[float] = None,
    atol: typing.Optional[float] = None,
) -> bool:
    """|numeric - exact| <= max(atol, rtol |exact|), defaults from `options`."""
    rtol = options.QUADRATURE_RTOL if rtol is None else rtol
    atol = options.QUADRATURE_ATOL if atol is None else atol
    target = float(exact)
    return abs(numeric - target) <= max(atol, rtol * abs(target))
