import math
from typing import Type

import numpy as np

from QMUtils.exceptions import AdvancedExceptionHandler, DomainError
from QMUtils.types import RealSequence


_exception_handler = AdvancedExceptionHandler()


def validate_finite(value: float, field_name: str) -> float:
    """
    Checks that a value is a finite real number and returns it as float.

    Raises:
        DomainError: If the value is NaN or infinite.
    """
    _exception_handler.validate_input(value, (int, float, np.integer, np.floating), field_name)
    value = float(value)
    if not math.isfinite(value):
        _exception_handler.raise_custom_exception(
            DomainError, f"{field_name} must be finite, got {value}."
        )
    return value


def validate_positive(
    value: float,
    field_name: str,
    error_type: Type[Exception] = DomainError
) -> float:
    """
    Checks that a value is a finite, strictly positive number.

    Args:
        value (float): Value to check.
        field_name (str): Name used in the error message.
        error_type (Type[Exception]): Exception raised on failure.

    Returns:
        float: The value as float.
    """
    value = validate_finite(value, field_name)
    if value <= 0.0:
        _exception_handler.raise_custom_exception(
            error_type, f"{field_name} must be > 0, got {value}."
        )
    return value


def is_uniform_ladder(values: RealSequence, rel_tol: float = 1e-9) -> bool:
    """
    Returns True when consecutive spacings of ``values`` agree within rel_tol.
    """
    array = np.asarray(values, dtype=float)
    if array.size < 2:
        return False
    steps = np.diff(array)
    return bool(np.all(np.abs(steps - steps[0]) <= rel_tol * abs(steps[0])))
