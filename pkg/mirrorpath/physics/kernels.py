"""
Closed-form propagators of the free line, the half-line, the infinite
square well, the harmonic oscillator and the half-harmonic oscillator.

Real-time kernels are for pointwise evaluation. Everything that integrates
over positions (traces, compositions, grid oracles) works in Euclidean time,
where the Boltzmann weight of a level is exp(-E beta / hbar).
"""
import cmath
import math
from typing import Optional

import numpy as np

from mirrorpath.datamodels.artifact import KernelValue
from mirrorpath.datamodels.config import (
    SeriesPolicy,
    SystemKind,
    SystemSpec,
    TimeArgument,
    UnitSystem,
)

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    CausticError,
    DomainError,
    SeriesTruncationError,
    UnsupportedModeError,
)
from QMUtils.logger import AdvancedLogger
from QMUtils.types import RealOrArray, RealSequence


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="kernels")


def _require_positive_positions(x_f: float, x_i: float, system: str) -> None:
    if not (x_f > 0.0 and x_i > 0.0):
        _exception_handler.raise_custom_exception(
            DomainError,
            f"{system} kernel needs x_f > 0 and x_i > 0, got ({x_f}, {x_i})."
        )


def _wall_factor(theta: float) -> complex:
    """1 - exp(i theta) without cancellation for small theta."""
    return -2j * math.sin(0.5 * theta) * cmath.exp(0.5j * theta)


# Euclidean helpers, vectorized over positions.

def _free_prefactor(beta: float, units: UnitSystem) -> float:
    return math.sqrt(units.mass / (2.0 * math.pi * units.hbar * beta))


def _free_euclidean(x_f, x_i, beta: float, units: UnitSystem):
    distance = np.subtract(x_f, x_i)
    return _free_prefactor(beta, units) * np.exp(
        -units.mass * distance ** 2 / (2.0 * units.hbar * beta)
    )


def _half_line_euclidean(x_f, x_i, beta: float, units: UnitSystem):
    x_f = np.asarray(x_f, dtype=float)
    x_i = np.asarray(x_i, dtype=float)
    reflection = -np.expm1(-2.0 * units.mass * x_f * x_i / (units.hbar * beta))
    return _free_euclidean(x_f, x_i, beta, units) * reflection


def _mehler_coefficients(omega: float, beta: float, units: UnitSystem):
    """Returns (prefactor, mw/2hbar * coth, mw/2hbar * csch) at Euclidean time beta."""
    phase = omega * beta
    decay = math.exp(-phase)
    csch = 2.0 * decay / -math.expm1(-2.0 * phase)
    coth = 1.0 / math.tanh(phase)
    scale = units.mass * omega / (2.0 * units.hbar)
    prefactor = math.sqrt(units.mass * omega * csch / (2.0 * math.pi * units.hbar))
    return prefactor, scale * coth, scale * csch


def _mehler_euclidean(x_f, x_i, omega: float, beta: float, units: UnitSystem):
    prefactor, diagonal, cross = _mehler_coefficients(omega, beta, units)
    x_f = np.asarray(x_f, dtype=float)
    x_i = np.asarray(x_i, dtype=float)
    exponent = diagonal * (x_f ** 2 + x_i ** 2) - 2.0 * cross * x_f * x_i
    return prefactor * np.exp(-exponent)


def _half_mehler_euclidean(x_f, x_i, omega: float, beta: float, units: UnitSystem):
    _, _, cross = _mehler_coefficients(omega, beta, units)
    x_f = np.asarray(x_f, dtype=float)
    x_i = np.asarray(x_i, dtype=float)
    reflection = -np.expm1(-4.0 * cross * x_f * x_i)
    return _mehler_euclidean(x_f, x_i, omega, beta, units) * reflection


def _well_shell_bound(shell: int, width: float, beta: float, units: UnitSystem) -> float:
    """Gaussian bound on every image of shell ``shell + 1``."""
    distance = 2.0 * shell * width
    return 4.0 * math.exp(-units.mass * distance ** 2 / (2.0 * units.hbar * beta))


def _well_euclidean(x_f, x_i, width: float, beta: float, units: UnitSystem,
                    policy: SeriesPolicy):
    """Image sum of the infinite well summed shell by shell over |n|."""
    x_f = np.asarray(x_f, dtype=float)
    x_i = np.asarray(x_i, dtype=float)
    gauss = lambda d: np.exp(-units.mass * d ** 2 / (2.0 * units.hbar * beta))
    partial = gauss(x_f - x_i) - gauss(x_f + x_i)
    for shell in range(1, policy.max_terms + 1):
        for n in (shell, -shell):
            shift = 2.0 * n * width
            partial = partial + gauss(x_f - x_i - shift) - gauss(x_f + x_i - shift)
        bound = _well_shell_bound(shell, width, beta, units)
        if bound == 0.0 or bound <= policy.rel_tol * float(np.max(np.abs(partial))):
            return _free_prefactor(beta, units) * partial
    raise SeriesTruncationError("infinite well image sum", policy.max_terms, bound)


def euclidean_kernel_array(
    sys: SystemSpec,
    x_f: RealOrArray,
    x_i: RealOrArray,
    beta: float,
    policy: Optional[SeriesPolicy] = None
) -> np.ndarray:
    """
    Euclidean kernel of ``sys`` broadcast over position arrays.

    No region checks are made, so grids may include the walls, where image
    kernels vanish.
    """
    policy = policy or SeriesPolicy()
    units = sys.units
    if sys.kind == SystemKind.FREE_LINE:
        return _free_euclidean(x_f, x_i, beta, units)
    if sys.kind == SystemKind.HALF_LINE:
        return _half_line_euclidean(x_f, x_i, beta, units)
    if sys.kind == SystemKind.INFINITE_WELL:
        return _well_euclidean(x_f, x_i, sys.width, beta, units, policy)
    if sys.kind == SystemKind.OSCILLATOR:
        return _mehler_euclidean(x_f, x_i, sys.omega, beta, units)
    return _half_mehler_euclidean(x_f, x_i, sys.omega, beta, units)


# Pointwise kernels.

def free_kernel(x_f: float, x_i: float, t: TimeArgument, u: UnitSystem) -> KernelValue:
    """
    Free-particle propagator.

    Real time uses the principal branch sqrt(m / (2 pi hbar |tau|))
    exp(-i pi/4 sign tau) exp(i m (x_f - x_i)^2 / (2 hbar tau)).
    """
    if t.is_euclidean:
        return KernelValue(float(_free_euclidean(x_f, x_i, t.value, u)))
    tau = t.value
    amplitude = math.sqrt(u.mass / (2.0 * math.pi * u.hbar * abs(tau)))
    phase = -math.copysign(math.pi / 4.0, tau) + u.mass * (x_f - x_i) ** 2 / (2.0 * u.hbar * tau)
    return KernelValue.from_complex(amplitude * cmath.exp(1j * phase))


def image_kernel(x_f: float, x_i: float, t: TimeArgument, u: UnitSystem) -> KernelValue:
    """
    Free kernel minus the kernel from the mirror point -x_i, for any real x_i.

    Computed as a plain difference, so it is exactly odd in x_i.
    """
    direct = free_kernel(x_f, x_i, t, u).value
    mirrored = free_kernel(x_f, -x_i, t, u).value
    return KernelValue.from_complex(direct - mirrored)


def half_line_kernel(x_f: float, x_i: float, t: TimeArgument, u: UnitSystem) -> KernelValue:
    """Free particle on x > 0 with a hard wall at the origin."""
    _require_positive_positions(x_f, x_i, "Half-line")
    if t.is_euclidean:
        return KernelValue(float(_half_line_euclidean(x_f, x_i, t.value, u)))
    direct = free_kernel(x_f, x_i, t, u).value
    theta = 2.0 * u.mass * x_f * x_i / (u.hbar * t.value)
    return KernelValue.from_complex(direct * _wall_factor(theta))


def isw_kernel(
    x_f: float,
    x_i: float,
    t: TimeArgument,
    u: UnitSystem,
    width: float,
    policy: Optional[SeriesPolicy] = None
) -> KernelValue:
    """
    Infinite square well on (0, width) by the method of images.

    Images at x_i + 2nL enter with + and at -x_i + 2nL with -. Shells
    n = +-j are added until the Gaussian bound of the next shell drops below
    ``policy.rel_tol`` times the partial sum.

    Raises:
        UnsupportedModeError: For real time.
        SeriesTruncationError: If max_terms shells do not converge.
    """
    policy = policy or SeriesPolicy()
    if not t.is_euclidean:
        _exception_handler.raise_custom_exception(
            UnsupportedModeError, "Infinite well image sum is only available in Euclidean time."
        )
    if not (0.0 < x_f < width and 0.0 < x_i < width):
        _exception_handler.raise_custom_exception(
            DomainError,
            f"Infinite well positions must lie in (0, {width}), got ({x_f}, {x_i})."
        )
    beta = t.value

    def gauss(distance: float) -> float:
        return math.exp(-u.mass * distance ** 2 / (2.0 * u.hbar * beta))

    terms = [gauss(x_f - x_i), -gauss(x_f + x_i)]
    bound = math.inf
    for shell in range(1, policy.max_terms + 1):
        for n in (shell, -shell):
            shift = 2.0 * n * width
            terms.append(gauss(x_f - x_i - shift))
            terms.append(-gauss(x_f + x_i - shift))
        partial = math.fsum(terms)
        bound = _well_shell_bound(shell, width, beta, u)
        if bound == 0.0 or bound <= policy.rel_tol * abs(partial):
            _logger.debug("Infinite well image sum used %d shells", shell)
            return KernelValue(_free_prefactor(beta, u) * partial)
    raise SeriesTruncationError("infinite well image sum", policy.max_terms, bound)


def oscillator_kernel(
    x_f: float,
    x_i: float,
    t: TimeArgument,
    omega: float,
    u: UnitSystem
) -> KernelValue:
    """
    Mehler kernel of the harmonic oscillator.

    Real time is restricted to the first caustic interval 0 < omega tau < pi.
    """
    if t.is_euclidean:
        return KernelValue(float(_mehler_euclidean(x_f, x_i, omega, t.value, u)))
    phase = omega * t.value
    if not 0.0 < phase < math.pi:
        _exception_handler.raise_custom_exception(
            CausticError,
            f"Real-time oscillator kernel needs 0 < omega tau < pi, got {phase}."
        )
    sine = math.sin(phase)
    amplitude = math.sqrt(u.mass * omega / (2.0 * math.pi * u.hbar * sine))
    action = (
        u.mass * omega / (2.0 * u.hbar * sine)
        * ((x_f ** 2 + x_i ** 2) * math.cos(phase) - 2.0 * x_f * x_i)
    )
    return KernelValue.from_complex(amplitude * cmath.exp(1j * (action - math.pi / 4.0)))


def half_oscillator_kernel(
    x_f: float,
    x_i: float,
    t: TimeArgument,
    omega: float,
    u: UnitSystem
) -> KernelValue:
    """Oscillator on x > 0 with a wall at the origin: Mehler minus its mirror image."""
    _require_positive_positions(x_f, x_i, "Half-oscillator")
    if t.is_euclidean:
        return KernelValue(float(_half_mehler_euclidean(x_f, x_i, omega, t.value, u)))
    direct = oscillator_kernel(x_f, x_i, t, omega, u).value
    sine = math.sin(omega * t.value)
    theta = 2.0 * u.mass * omega * x_f * x_i / (u.hbar * sine)
    return KernelValue.from_complex(direct * _wall_factor(theta))


def kernel(
    sys: SystemSpec,
    x_f: float,
    x_i: float,
    t: TimeArgument,
    policy: Optional[SeriesPolicy] = None
) -> KernelValue:
    """Evaluates the closed-form kernel of any supported system."""
    if sys.kind == SystemKind.FREE_LINE:
        return free_kernel(x_f, x_i, t, sys.units)
    if sys.kind == SystemKind.HALF_LINE:
        return half_line_kernel(x_f, x_i, t, sys.units)
    if sys.kind == SystemKind.INFINITE_WELL:
        return isw_kernel(x_f, x_i, t, sys.units, sys.width, policy)
    if sys.kind == SystemKind.OSCILLATOR:
        return oscillator_kernel(x_f, x_i, t, sys.omega, sys.units)
    return half_oscillator_kernel(x_f, x_i, t, sys.omega, sys.units)


def boltzmann_sum(energies: RealSequence, beta: float, hbar: float = 1.0) -> float:
    """Truncated partition function sum of exp(-E_n beta / hbar)."""
    return math.fsum(math.exp(-float(energy) * beta / hbar) for energy in energies)
