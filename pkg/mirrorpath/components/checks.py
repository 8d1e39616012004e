import math
from typing import Callable

from mirrorpath.datamodels.artifact import CheckResultArtifactEntity

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


_exception_handler = AdvancedExceptionHandler()


def run_check(
    name: str,
    tolerance: float,
    measure: Callable[[], float],
    logger: AdvancedLogger,
    at_least: bool = False
) -> CheckResultArtifactEntity:
    """
    Runs one verification check.

    ``measure`` returns the observed error, which passes when it is at most
    ``tolerance`` (or, with ``at_least``, when it is at least ``tolerance``).
    A raised error fails the check with observed NaN and the error text.
    """
    try:
        observed = float(measure())
    except Exception as exc:
        logger.error("Check %s raised %s", name, type(exc).__name__)
        _exception_handler.handle_exception(exc)
        return CheckResultArtifactEntity(name, False, math.nan, tolerance, str(exc))

    passed = observed >= tolerance if at_least else observed <= tolerance
    if passed:
        logger.info("Check %s passed: observed %.3e, tolerance %.1e", name, observed, tolerance)
    else:
        logger.warning("Check %s failed: observed %.3e, tolerance %.1e", name, observed, tolerance)
    return CheckResultArtifactEntity(name, passed, observed, tolerance)
