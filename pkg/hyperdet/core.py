"""
Module: hyperdet.core

This module provides the error hierarchy of the package and a small framework for
validating and coercing the inputs of the exact-arithmetic operations using a
contract-based approach.

Key Components:
- HyperdetError and its subclasses: the error causes the command line maps to exit codes.
- _HyperdetContract: An abstract base class for creating validation contracts.
- HypermatrixContract: A base class for contracts on Hypermatrix arguments.
- MomentsContract: A base class for contracts on MomentSequence arguments.
- ParamsContract: A base class for contracts on SelbergParams arguments.
- requires: A decorator for enforcing a contract on a function argument.

Usage:
1. Extend one of the kind-specific contracts to create a custom validation rule.
2. Apply the `requires` decorator to functions, specifying the argument name and the contract to
enforce.

Example:
    class NonEmpty(HypermatrixContract):
        def forward(self, tensor):
            return tensor.dim > 0

    @requires("tensor", NonEmpty(coerce=False, warning_message="empty hypermatrix"))
    def det(tensor):
        ...
"""

import abc
import functools
import inspect
import logging
import typing
import warnings

from hyperdet import options


__all__ = [
    "HyperdetError",
    "InputError",
    "ContractViolation",
    "BudgetExceededError",
    "IdentityVerificationError",
    "HypermatrixContract",
    "MomentsContract",
    "ParamsContract",
    "requires",
]

logger = logging.getLogger(__name__)

Data = typing.TypeVar("Data")


class HyperdetError(Exception):
    """Base class of every error raised on purpose by the package."""


class InputError(HyperdetError, ValueError):
    """Malformed or inconsistent input (shapes, partitions, lengths, orders)."""


class ContractViolation(InputError):
    """An argument failed its contract and could not be coerced."""


class BudgetExceededError(HyperdetError):
    """A computation would exceed its configured enumeration, memory or term budget."""


class IdentityVerificationError(HyperdetError):
    """Two independent computations of the same exact quantity disagree."""


class _HyperdetContract(abc.ABC):
    """
    Abstract base class for validating and optionally coercing hyperdet inputs.

    This class provides a contract to check whether an input adheres to specific requirements.
    If the validation fails, the input can be optionally coerced based on the configuration.
    """

    def __init__(self, coerce: typing.Optional[bool] = None, warning_message: str = ""):
        """
        Initialize the contract with optional coercion settings.

        Args:
            coerce (bool, optional): Whether to attempt coercion when validation fails.
                Defaults to `options.COERCE_INPUTS`.
            warning_message (str): Message used for the coercion warning and for the
                error raised by `requires`.
        """
        if coerce is None:
            coerce = options.COERCE_INPUTS
        self._coerce: typing.Final[bool] = coerce
        self._warning_message: typing.Final[str] = (
            warning_message or options.REQUIREMENT_FAILURE_MSG
        )

    @property
    def message(self) -> str:
        return self._warning_message

    def __call__(self, data: Data) -> tuple[bool, Data]:
        """
        Validate the data and optionally coerce it if validation fails.

        Args:
            data: The input to validate.

        Returns:
            tuple[bool, Data]: Whether the validation passed (possibly after coercion), and
                               the original or coerced input.
        """
        check_pass = self.forward(data)

        if not check_pass and self._coerce:
            warnings.warn(self._warning_message)
            coerced = self._coerce_input(data)

            if isinstance(coerced, bool) and not coerced:
                warnings.warn(Warning(options.COERCION_FAILURE_MSG))
            else:
                check_pass = self.forward(coerced)
                data = coerced

        return check_pass, data

    @abc.abstractmethod
    def forward(self, data: Data) -> bool:
        """
        Perform validation on the data.

        Args:
            data: The input to validate.

        Returns:
            bool: True if the data meets the validation criteria, False otherwise.
        """

    def _coerce_input(self, data: Data) -> typing.Union[bool, Data]:
        """
        Attempt to coerce the input to a valid form.

        Returns:
            The coerced input if successful, or False if coercion is not supported.
        """
        return False


class HypermatrixContract(_HyperdetContract):
    """A contract on a `hyperdet.grassmann.Hypermatrix` argument."""

    @abc.abstractmethod
    def forward(self, tensor) -> bool:
        """Check the hypermatrix; must be implemented by subclasses."""


class MomentsContract(_HyperdetContract):
    """A contract on a `hyperdet.hankel.MomentSequence` argument."""

    @abc.abstractmethod
    def forward(self, moments) -> bool:
        """Check the moment sequence; must be implemented by subclasses."""


class ParamsContract(_HyperdetContract):
    """A contract on a `hyperdet.selberg.SelbergParams` argument."""

    @abc.abstractmethod
    def forward(self, params) -> bool:
        """Check the parameter set; must be implemented by subclasses."""


def requires(arg_name: str, contract: _HyperdetContract) -> typing.Callable:
    """
    Decorator to enforce that a function argument satisfies a specified contract.

    The argument is looked up by name whether it was passed positionally or by keyword. If the
    contract passes (possibly after coercion) the coerced value replaces the argument; otherwise
    a ContractViolation is raised.

    Args:
        arg_name (str): The name of the argument to validate.
        contract (_HyperdetContract): The contract used to validate the argument.

    Returns:
        Callable: A decorator that validates the argument before the function is executed.

    Example:
        @requires("tensor", RequiresEvenOrder())
        def det_wedge(tensor):
            ...
    """

    def requires_wrapper(func: typing.Callable) -> typing.Callable:
        signature = inspect.signature(func)
        if arg_name not in signature.parameters:
            raise TypeError(f"{func.__qualname__} has no argument named {arg_name!r}")

        @functools.wraps(func)
        def wrapped_func(*args, **kwargs):
            bound = signature.bind(*args, **kwargs)
            check_pass, coerced_data = contract(bound.arguments[arg_name])
            if not check_pass:
                logger.debug("contract %s rejected %s", type(contract).__name__, arg_name)
                raise ContractViolation(
                    f"Validation failed for argument: {arg_name} ({contract.message})"
                )
            bound.arguments[arg_name] = coerced_data
            return func(*bound.args, **bound.kwargs)

        return wrapped_func

    return requires_wrapper
