import logging
from typing import Any, NoReturn, Optional, Type
import traceback
import os

from QMUtils.logger import AdvancedLogger


class MirrorPathError(Exception):
    """Base class of every error raised by the numerical library."""

    def __init__(self, message: str):
        """
        Initializes MirrorPathError.

        Args:
            message (str): Error message.
        """
        self.message = message
        super().__init__(message)


class DomainError(MirrorPathError):
    """An argument lies outside the allowed region or interval."""


class PoleError(MirrorPathError):
    """Evaluation requested at a pole of Γ or of the ₂F₁ series."""


class NearPoleError(MirrorPathError):
    """Green's function energy lies within the pole guard of an eigenvalue."""


class SeriesTruncationError(MirrorPathError):
    """A series or image sum hit max_terms before meeting rel_tol."""

    def __init__(self, series: str, terms: int, last_delta: float = float("nan")):
        """
        Initializes SeriesTruncationError.

        Args:
            series (str): Name of the series that failed to converge.
            terms (int): Number of terms summed before giving up.
            last_delta (float): Size of the last partial-sum increment.
        """
        self.series = series
        self.terms = terms
        self.last_delta = last_delta
        super().__init__(
            f"{series} not converged after {terms} terms (last delta {last_delta:.3e})"
        )


class RouteDisagreementError(MirrorPathError):
    """Two independent evaluation routes of the same quantity disagree."""


class ZeroTimeError(MirrorPathError):
    """A propagator was requested at zero elapsed time."""


class CausticError(MirrorPathError):
    """Real-time oscillator kernel requested outside the first caustic interval."""


class UnsupportedModeError(MirrorPathError):
    """The requested time mode or system is not supported by the operation."""


class NonNormalizableError(MirrorPathError):
    """A sampled ground state has no finite, non-zero norm."""


class IndexOverflowError(MirrorPathError):
    """Eigenstate index beyond the supported range."""


class ConvergenceError(MirrorPathError):
    """An iterative solve did not converge, or two estimates of one quantity disagree."""


class IllConditionedError(MirrorPathError):
    """Spectrum extraction cannot resolve the requested levels."""


class InvalidRequestError(MirrorPathError):
    """A CLI request is incomplete or inconsistent."""


def _create_default_logger() -> logging.Logger:
    """
    Creates a default logger for exception handling.

    Returns:
        logging.Logger: A configured logger instance.
    """
    return AdvancedLogger(name="ExceptionHandler").logger


class AdvancedExceptionHandler:
    """
    Central place where library errors are logged before they propagate.

    Features:
    - Logging of exception origin (file and line)
    - Raising of typed domain errors with a logged message
    - Type validation of inputs
    """

    def __init__(
        self,
        logger: Optional[logging.Logger] = None,
        log_level: int = logging.ERROR
    ) -> None:
        """
        Initializes the AdvancedExceptionHandler.

        Args:
            logger (Optional[logging.Logger]): A logger instance for logging
                exceptions. If None, a default logger is created.
            log_level (int): The logging level for exceptions (default: ERROR).
        """
        self.logger: logging.Logger = logger or _create_default_logger()
        self.log_level: int = log_level

    def handle_exception(
        self,
        exc: Exception,
        custom_message: Optional[str] = None
    ) -> None:
        """
        Logs an exception together with the place it was raised from.

        Args:
            exc (Exception): The exception instance to handle.
            custom_message (Optional[str]): An optional custom message to
                include in the log.
        """
        if custom_message:
            self.logger.log(self.log_level, f"Custom Message: {custom_message}")
        frames = traceback.extract_tb(exc.__traceback__)
        if not frames:
            self.logger.log(self.log_level, f"Exception: {exc}")
            return
        frame = frames[-1]
        file_name: str = os.path.basename(frame.filename)
        self.logger.log(
            self.log_level,
            f"Exception occurred in file '{file_name}', "
            f"line {frame.lineno}: {str(exc)}"
        )

    def raise_custom_exception(
        self,
        exception_type: Type[Exception],
        message: str
    ) -> NoReturn:
        """
        Raises a custom exception with the specified type and message.

        Args:
            exception_type (Type[Exception]): The type of exception to raise.
            message (str): The message for the exception.
        """
        self.logger.log(
            self.log_level,
            f"Raising exception: {exception_type.__name__} - {message}"
        )
        raise exception_type(message)

    def validate_input(
        self,
        value: Any,
        expected_type: Any,
        field_name: str
    ) -> None:
        """
        Validates the input type and raises a ValueError if the type is incorrect.

        Args:
            value (Any): The value to validate.
            expected_type (Any): A type or tuple of types accepted for the value.
            field_name (str): The name of the field being validated
                (used for logging and error messages).

        Raises:
            ValueError: If the value does not match the expected type.
        """
        if not isinstance(value, expected_type):
            expected_name = (
                " | ".join(t.__name__ for t in expected_type)
                if isinstance(expected_type, tuple)
                else expected_type.__name__
            )
            error_message: str = (
                f"Invalid type for field '{field_name}': "
                f"Expected {expected_name}, "
                f"got {type(value).__name__}."
            )
            self.logger.log(self.log_level, error_message)
            raise ValueError(error_message)
