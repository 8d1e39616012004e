"""
Special functions evaluated without external special-function libraries:
Lanczos Gamma, the Gauss hypergeometric power series, physicists' Hermite
polynomials and the half-integer-degree Ferrers functions.
"""
import math
from typing import Optional

import numpy as np

from mirrorpath.constants.common.numerics import (
    LANCZOS_COEFFICIENTS,
    LANCZOS_G,
    LEGENDRE_ROUTE_TOL,
)
from mirrorpath.datamodels.config import HypergeometricArgs, SeriesPolicy

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    DomainError,
    PoleError,
    RouteDisagreementError,
    SeriesTruncationError,
)
from QMUtils.logger import AdvancedLogger
from QMUtils.types import RealOrArray


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="specfun")

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
# Gamma(x) overflows a double above this argument.
_GAMMA_OVERFLOW = 171.62


def _is_non_positive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _lanczos_series(x: float):
    """Returns (A(x), t) with Gamma(x + 1) = sqrt(2 pi) t^(x + 1/2) e^-t A(x)."""
    total = LANCZOS_COEFFICIENTS[0]
    for index, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        total += coefficient / (x + index)
    return total, x + LANCZOS_G + 0.5


def gamma(x: float) -> float:
    """
    Gamma function by the Lanczos approximation (g = 7, nine coefficients).

    Arguments below 1/2 go through the reflection formula.

    Raises:
        PoleError: At x = 0, -1, -2, ...
    """
    x = float(x)
    if _is_non_positive_integer(x):
        _exception_handler.raise_custom_exception(
            PoleError, f"Gamma has a pole at x = {x}."
        )
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x > _GAMMA_OVERFLOW:
        return math.inf
    series, t = _lanczos_series(x - 1.0)
    half_power = t ** (0.5 * (x - 0.5))
    return math.sqrt(2.0 * math.pi) * half_power * (half_power * math.exp(-t)) * series


def log_gamma(x: float) -> float:
    """
    Natural logarithm of Gamma for x > 0.

    Used for Gamma ratios whose factors overflow on their own.
    """
    x = float(x)
    if x <= 0.0:
        _exception_handler.raise_custom_exception(
            DomainError, f"log_gamma requires x > 0, got {x}."
        )
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    series, t = _lanczos_series(x - 1.0)
    return _HALF_LOG_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(series)


def hyp2f1(args: HypergeometricArgs, policy: Optional[SeriesPolicy] = None) -> float:
    """
    Gauss hypergeometric function by direct power-series summation.

    The sum stops once two consecutive terms are below
    ``policy.rel_tol * |partial sum|``, or when a term vanishes exactly
    (terminating series).

    Args:
        args (HypergeometricArgs): a, b, c and z with |z| < 1.
        policy (SeriesPolicy): Truncation contract.

    Returns:
        float: F(a, b; c; z).

    Raises:
        DomainError: If |z| >= 1.
        PoleError: If c is zero or a negative integer.
        SeriesTruncationError: If max_terms is reached first.
    """
    policy = policy or SeriesPolicy()
    a, b, c, z = float(args.a), float(args.b), float(args.c), float(args.z)
    if not abs(z) < 1.0:
        _exception_handler.raise_custom_exception(
            DomainError, f"hyp2f1 series needs |z| < 1, got z = {z}."
        )
    if _is_non_positive_integer(c):
        _exception_handler.raise_custom_exception(
            PoleError, f"hyp2f1 series has a pole at c = {c}."
        )

    terms = [1.0]
    term = 1.0
    partial = 1.0
    small_steps = 0
    for k in range(policy.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        terms.append(term)
        partial += term
        if term == 0.0:
            return math.fsum(terms)
        if abs(term) <= policy.rel_tol * abs(partial):
            small_steps += 1
            if small_steps == 2:
                return math.fsum(terms)
        else:
            small_steps = 0
    _logger.debug("hyp2f1(%s, %s; %s; %s) truncated at %d terms", a, b, c, z, policy.max_terms)
    raise SeriesTruncationError("hyp2f1", policy.max_terms, abs(term))


def hermite(n: int, x: RealOrArray) -> RealOrArray:
    """
    Physicists' Hermite polynomial H_n by the three-term recurrence.

    The recurrence only flips signs under x -> -x, so parity holds exactly.
    """
    if n < 0:
        _exception_handler.raise_custom_exception(
            DomainError, f"Hermite degree must be >= 0, got {n}."
        )
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n == 0:
        return float(previous) if scalar else previous
    current = 2.0 * x
    for k in range(1, n):
        previous, current = current, 2.0 * x * current - 2.0 * k * previous
    return float(current) if scalar else current


def ferrers_half_closed_form(n: int, theta: float) -> float:
    """sqrt(2 / (pi sin theta)) sin((n + 1) theta) / (n + 1)."""
    return (
        math.sqrt(2.0 / (math.pi * math.sin(theta)))
        * math.sin((n + 1) * theta) / (n + 1)
    )


def ferrers_half_series(n: int, theta: float, policy: Optional[SeriesPolicy] = None) -> float:
    """P^{-1/2}_{n+1/2}(cos theta) through the hypergeometric representation."""
    half_angle = 0.5 * theta
    args = HypergeometricArgs(
        a=-n - 0.5,
        b=n + 1.5,
        c=1.5,
        z=math.sin(half_angle) ** 2,
    )
    return math.sqrt(math.tan(half_angle)) * hyp2f1(args, policy) / gamma(1.5)


def ferrers_legendre_half(
    n: int,
    theta: float,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """
    Ferrers function P^{-1/2}_{n+1/2}(cos theta) in the real convention.

    The closed trigonometric form is cross-checked against the
    hypergeometric series and returned.

    Raises:
        DomainError: If theta is not inside (0, pi) or n < 0.
        RouteDisagreementError: If the two routes differ by more than
            1e-8 * max(1, |closed form|).
    """
    if n < 0:
        _exception_handler.raise_custom_exception(
            DomainError, f"Degree index must be >= 0, got {n}."
        )
    if not 0.0 < theta < math.pi:
        _exception_handler.raise_custom_exception(
            DomainError, f"theta must lie in (0, pi), got {theta}."
        )
    closed = ferrers_half_closed_form(n, theta)
    series = ferrers_half_series(n, theta, policy)
    gap = abs(closed - series)
    if gap > LEGENDRE_ROUTE_TOL * max(1.0, abs(closed)):
        _exception_handler.raise_custom_exception(
            RouteDisagreementError,
            f"Ferrers routes disagree at n={n}, theta={theta}: "
            f"closed={closed!r}, series={series!r}."
        )
    return closed
