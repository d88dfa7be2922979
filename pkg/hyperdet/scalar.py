"""
Module: hyperdet.scalar

Exact scalars: arbitrary precision rationals, univariate polynomials in `y` with rational
coefficients, the ring descriptions that let the hypermatrix algorithms run unchanged over
either, and the combinatorial functions (Pochhammer symbol, factorial, binomial,
multinomial) that every closed form is written with.

Key Components:
- Rational: alias of `fractions.Fraction`; always in lowest terms.
- UniPoly: immutable polynomial in y over sympy's QQ domain, canonical (no trailing zeros).
- ScalarRing, RATIONAL, POLY: zero/one/parse/dump for each scalar kind.
- pochhammer, factorial, binomial, multinomial.
"""

import abc
import math
import numbers
import typing
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ

from hyperdet.core import InputError


__all__ = [
    "Rational",
    "Y",
    "UniPoly",
    "ScalarRing",
    "RATIONAL",
    "POLY",
    "ring_for",
    "ring_of",
    "to_rational",
    "pochhammer",
    "factorial",
    "binomial",
    "multinomial",
]

Rational = Fraction

RationalLike = typing.Union[Fraction, int, str]

Y: typing.Final = sympy.Symbol("y")


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert an int, a Fraction or a "p/q" / "p" / decimal string to a Fraction.

    Floats are accepted only when they carry an exact integer value, since any other float
    has already been rounded.

    Raises:
        InputError: If the value cannot be read as an exact rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float) and value.is_integer():
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def pochhammer(x: RationalLike, m: int) -> Fraction:
    """
    Rising factorial (x)_m = x (x + 1) ... (x + m - 1), with (x)_0 = 1.

    Args:
        x: Base of the product.
        m (int): Number of factors, m >= 0.

    Returns:
        Fraction: The exact product.
    """
    if m < 0:
        raise InputError(f"pochhammer length must be non-negative, got {m}")
    x = to_rational(x)
    result = Fraction(1)
    for j in range(m):
        result *= x + j
    return result


def factorial(m: int) -> int:
    """
    m! for a non-negative integer m.

    Raises:
        InputError: If m is negative.
    """
    if m < 0:
        raise InputError(f"factorial of negative integer {m}")
    return math.factorial(m)


def binomial(m: int, j: int) -> int:
    """Binomial coefficient; zero when j > m (used for triangular matrices)."""
    if m < 0 or j < 0:
        raise InputError(f"binomial arguments must be non-negative, got ({m}, {j})")
    return math.comb(m, j)


def multinomial(parts: typing.Sequence[int]) -> int:
    """
    Multinomial coefficient (sum parts)! / prod(parts_i!).

    Args:
        parts: Non-empty sequence of non-negative integers.

    Returns:
        int: The multinomial coefficient.
    """
    if len(parts) == 0:
        raise InputError("multinomial needs at least one part")
    if any(p < 0 for p in parts):
        raise InputError(f"multinomial parts must be non-negative, got {list(parts)}")
    result = 1
    total = 0
    for part in parts:
        total += part
        result *= math.comb(total, part)
    return result


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


class UniPoly:
    """
    Polynomial in the indeterminate y with rational coefficients, backed by `sympy.Poly` over
    the QQ domain.

    Coefficients are exposed lowest degree first as Fractions with trailing zeros removed, so
    equal polynomials have equal representations. The zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ("_poly", "_coeffs")

    def __init__(self, coefficients: typing.Iterable[RationalLike] = ()):
        coeffs = [to_rational(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(coeffs)
        self._poly = sympy.Poly.from_list([_to_sympy(c) for c in reversed(coeffs)] or [0], Y, domain=QQ)

    @classmethod
    def _wrap(cls, poly: sympy.Poly) -> "UniPoly":
        wrapped = cls.__new__(cls)
        wrapped._poly = poly
        if poly.is_zero:
            wrapped._coeffs = ()
        else:
            wrapped._coeffs = tuple(_from_sympy(c) for c in reversed(poly.all_coeffs()))
        return wrapped

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "UniPoly":
        """
        Wrap a univariate sympy polynomial.

        Args:
            poly (sympy.Poly): Polynomial in a single generator with rational coefficients.

        Returns:
            UniPoly: The same polynomial written in y over QQ.
        """
        return cls._wrap(sympy.Poly(poly.as_expr().subs(poly.gen, Y), Y, domain=QQ))

    @classmethod
    def constant(cls, value: RationalLike) -> "UniPoly":
        return cls([value])

    @classmethod
    def y(cls) -> "UniPoly":
        """The indeterminate itself."""
        return cls([0, 1])

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> "UniPoly":
        """slope * y + intercept."""
        return cls([intercept, slope])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of y^power; zero outside the stored range."""
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def as_sympy(self) -> sympy.Poly:
        return self._poly

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __call__(self, y: RationalLike) -> Fraction:
        """Evaluate at a rational point."""
        return _from_sympy(self._poly.eval(_to_sympy(to_rational(y))))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return self(inner(y))."""
        return UniPoly._wrap(self._poly.compose(inner._poly))

    @staticmethod
    def _lift(other) -> typing.Optional["UniPoly"]:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (Fraction, numbers.Integral)) and not isinstance(other, bool):
            return UniPoly([other])
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return UniPoly._wrap(self._poly + other._poly)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._wrap(-self._poly)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return UniPoly._wrap(self._poly - other._poly)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return UniPoly._wrap(other._poly - self._poly)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return UniPoly._wrap(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise InputError("negative polynomial power")
        return UniPoly._wrap(self._poly**exponent)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if len(self._coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash(self._coeffs)

    def __reduce__(self):
        return UniPoly, (self._coeffs,)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = "y" if power == 1 else f"y^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list[str]:
        """Coefficient strings, lowest degree first."""
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: typing.Sequence[RationalLike]) -> "UniPoly":
        return cls(data)


class ScalarRing(abc.ABC):
    """
    The ring contract the hypermatrix algorithms are written against.

    Values themselves carry +, -, * and ==; a ring adds the constants and the
    serialization for its kind.
    """

    name: str

    @property
    @abc.abstractmethod
    def zero(self):
        """Additive identity."""

    @property
    @abc.abstractmethod
    def one(self):
        """Multiplicative identity."""

    @abc.abstractmethod
    def parse(self, data):
        """Read one scalar from its JSON form."""

    @abc.abstractmethod
    def dump(self, value):
        """Write one scalar to its JSON form."""

    @abc.abstractmethod
    def contains(self, value) -> bool:
        """True when value is already an element of this ring."""

    def __reduce__(self):
        return ring_for, (self.name,)

    def __repr__(self) -> str:
        return f"<ScalarRing {self.name}>"


class _RationalRing(ScalarRing):
    name = "rational"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, data) -> Fraction:
        return to_rational(data)

    def dump(self, value: Fraction) -> str:
        return str(value)

    def contains(self, value) -> bool:
        return isinstance(value, Fraction)


class _PolyRing(ScalarRing):
    name = "poly"

    @property
    def zero(self) -> UniPoly:
        return UniPoly()

    @property
    def one(self) -> UniPoly:
        return UniPoly([1])

    def parse(self, data) -> UniPoly:
        if isinstance(data, (list, tuple)):
            return UniPoly.from_json(data)
        return UniPoly.constant(to_rational(data))

    def dump(self, value: UniPoly) -> list[str]:
        return value.to_json()

    def contains(self, value) -> bool:
        return isinstance(value, UniPoly)


RATIONAL: typing.Final[ScalarRing] = _RationalRing()
POLY: typing.Final[ScalarRing] = _PolyRing()

_RINGS = {RATIONAL.name: RATIONAL, POLY.name: POLY}


def ring_for(kind: str) -> ScalarRing:
    """Look up a ring by its JSON name ("rational" or "poly")."""
    try:
        return _RINGS[kind]
    except KeyError:
        raise InputError(f"unknown scalar kind {kind!r}; expected one of {sorted(_RINGS)}")


def ring_of(value) -> ScalarRing:
    """The ring a single scalar belongs to."""
    if isinstance(value, UniPoly):
        return POLY
    return RATIONAL
