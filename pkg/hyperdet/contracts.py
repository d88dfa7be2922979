"""
Module: contracts

This module provides extensions to the contract base classes of `hyperdet.core` for validating
and coercing the arguments of the hyperdeterminant, Hankel and Selberg operations.

Key Components:
- RequiresHypermatrix: Ensures an argument is a Hypermatrix, with optional coercion from nested
lists of rationals.
- RequiresEvenOrder: Validates that a hypermatrix has an even number of indices. Not coercible.
- RequiresMomentSequence: Ensures an argument is a MomentSequence, with optional coercion from a
list of rationals.
- RequiresSelbergParams: Ensures an argument is a SelbergParams, with optional coercion from an
(a, b, k, n) tuple or a mapping.
- RequiresPositiveInteger: Validates a strictly positive integer, with optional coercion from an
integral Fraction or string.

Usage:
    These contracts are attached to operations with `hyperdet.core.requires`, or called directly
    to check a value.

Example:
    ```python
    validator = RequiresHypermatrix(coerce=True)
    check_pass, tensor = validator([[1, 0], [0, 1]])
    print(check_pass, tensor)  # Output: True Hypermatrix(order=2, dim=2, scalar=rational)
    ```
"""

import numbers
import typing
from fractions import Fraction

from hyperdet.core import HypermatrixContract, HyperdetError, MomentsContract, ParamsContract


class RequiresHypermatrix(HypermatrixContract):
    """
    Validates that the argument is a Hypermatrix.
    """

    def __init__(self, coerce: typing.Optional[bool] = None):
        super().__init__(coerce, "expected a Hypermatrix")

    def forward(self, tensor) -> bool:
        """
        Check that the argument is a Hypermatrix.

        Returns:
            bool: True for a Hypermatrix, False otherwise.
        """
        from hyperdet.grassmann import Hypermatrix

        return isinstance(tensor, Hypermatrix)

    def _coerce_input(self, tensor):
        """
        Build a rational Hypermatrix from nested lists.

        Returns:
            Hypermatrix or bool: The coerced hypermatrix, or False if the data is not a cubical
            nesting of rationals.
        """
        from hyperdet.grassmann import Hypermatrix

        if not isinstance(tensor, (list, tuple)):
            return False
        try:
            return Hypermatrix.from_nested(tensor)
        except HyperdetError:
            return False


class RequiresEvenOrder(HypermatrixContract):
    """
    Validates that the hypermatrix has an even order.
    """

    def __init__(self):
        super().__init__(coerce=False, warning_message="odd order")

    def forward(self, tensor) -> bool:
        """
        Check that the number of indices is even.

        Returns:
            bool: True if the order is even, False otherwise.
        """
        return getattr(tensor, "order", 1) % 2 == 0


class RequiresMomentSequence(MomentsContract):
    """
    Validates that the argument is a MomentSequence.
    """

    def __init__(self, coerce: typing.Optional[bool] = None):
        super().__init__(coerce, "expected a MomentSequence")

    def forward(self, moments) -> bool:
        from hyperdet.hankel import MomentSequence

        return isinstance(moments, MomentSequence)

    def _coerce_input(self, moments):
        """
        Wrap a list of rationals (or rational strings) as a MomentSequence.

        Returns:
            MomentSequence or bool: The coerced sequence, or False on unreadable values.
        """
        from hyperdet.hankel import MomentSequence

        if not isinstance(moments, (list, tuple)):
            return False
        try:
            return MomentSequence(moments)
        except HyperdetError:
            return False


class RequiresSelbergParams(ParamsContract):
    """
    Validates that the argument is a SelbergParams.
    """

    def __init__(self, coerce: typing.Optional[bool] = None):
        super().__init__(coerce, "expected SelbergParams(a, b, k, n)")

    def forward(self, params) -> bool:
        from hyperdet.selberg import SelbergParams

        return isinstance(params, SelbergParams)

    def _coerce_input(self, params):
        """
        Build SelbergParams from an (a, b, k, n) tuple or a mapping with those keys.

        Returns:
            SelbergParams or bool: The coerced parameters, or False if they are invalid.
        """
        from hyperdet.selberg import SelbergParams

        try:
            if isinstance(params, typing.Mapping):
                return SelbergParams.create(**params)
            if isinstance(params, (list, tuple)) and len(params) == 4:
                return SelbergParams.create(*params)
        except (HyperdetError, TypeError):
            return False
        return False


class RequiresPositiveInteger(ParamsContract):
    """
    Validates that a parameter is a strictly positive integer.
    """

    def __init__(self, name: str, coerce: typing.Optional[bool] = None):
        self.name = name
        super().__init__(coerce, f"{name} must be a positive integer")

    def forward(self, value) -> bool:
        return (
            isinstance(value, numbers.Integral)
            and not isinstance(value, bool)
            and value > 0
        )

    def _coerce_input(self, value):
        """
        Convert an integral Fraction or an integer string to int.

        Returns:
            int or bool: The integer, or False when the value is not integral.
        """
        try:
            rational = Fraction(value) if isinstance(value, (str, Fraction)) else None
        except (ValueError, ZeroDivisionError):
            return False
        if rational is None or rational.denominator != 1:
            return False
        return int(rational)
