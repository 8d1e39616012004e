"""
Supersymmetric partner potentials V_-+ = W^2 -+ W' of the Rosen-Morse and
oscillator superpotentials, their zero-energy ground states and the b = 1
reduction of Rosen-Morse onto the infinite square well. Units are
natural_susy (hbar = 2m = 1), so H = -d^2/dx^2 + V.
"""
import math
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from mirrorpath.constants.common.env import DEFAULT_SEED
from mirrorpath.constants.common.numerics import POTENTIAL_IDENTITY_TOL
from mirrorpath.datamodels.artifact import (
    CheckResultArtifactEntity,
    LimitCheckArtifactEntity,
    PartnerPotentials,
    Spectrum,
)
from mirrorpath.datamodels.config import (
    GreensQuery,
    Grid,
    SeriesPolicy,
    Superpotential,
    SuperpotentialKind,
    UnitSystem,
)
from mirrorpath.physics.spectral import isw_greens, poschl_teller_greens

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    DomainError,
    NonNormalizableError,
)
from QMUtils.logger import AdvancedLogger
from QMUtils.types import RealOrArray


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="susy")


def _inside_domain(w: Superpotential, x: RealOrArray, closed: bool = False) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    lower, upper = w.domain
    inside = (x >= lower) & (x <= upper) if closed else (x > lower) & (x < upper)
    if not np.all(inside):
        bracket = "[]" if closed else "()"
        _exception_handler.raise_custom_exception(
            DomainError,
            f"Positions must lie in {bracket[0]}{lower}, {upper}{bracket[1]}."
        )
    return x


def _output(values: np.ndarray, scalar: bool) -> RealOrArray:
    return float(values) if scalar else values


def _warn_unvalidated(b: float) -> None:
    if b < 1.0:
        _logger.warning("Rosen-Morse b = %s < 1 is outside the validated range.", b)


def superpotential(w: Superpotential, x: RealOrArray) -> RealOrArray:
    scalar = np.isscalar(x)
    x = _inside_domain(w, x)
    if w.kind == SuperpotentialKind.ROSEN_MORSE:
        return _output(-w.b / np.tan(x), scalar)
    return _output(0.5 * w.omega * x, scalar)


def superpotential_derivative(w: Superpotential, x: RealOrArray) -> RealOrArray:
    """Analytic W'(x)."""
    scalar = np.isscalar(x)
    x = _inside_domain(w, x)
    if w.kind == SuperpotentialKind.ROSEN_MORSE:
        return _output(w.b / np.sin(x) ** 2, scalar)
    return _output(np.full_like(x, 0.5 * w.omega), scalar)


def partner_potentials(w: Superpotential, x: RealOrArray) -> PartnerPotentials:
    """
    V_-+ = W^2 -+ W'.

    Rosen-Morse values use b (b -+ 1) cosec^2 x - b^2, which is W^2 -+ W'
    with cot^2 = cosec^2 - 1 applied exactly, so V_-(x, 1) = -1 holds to the
    last bit.

    Raises:
        DomainError: Outside the open domain of the superpotential.
    """
    scalar = np.isscalar(x)
    x = _inside_domain(w, x)
    if w.kind == SuperpotentialKind.ROSEN_MORSE:
        b = w.b
        cosec_squared = 1.0 / np.sin(x) ** 2
        v_minus = b * (b - 1.0) * cosec_squared - b ** 2
        v_plus = b * (b + 1.0) * cosec_squared - b ** 2
    else:
        square = (0.5 * w.omega * x) ** 2
        v_minus = square - 0.5 * w.omega
        v_plus = square + 0.5 * w.omega
    return PartnerPotentials(_output(v_minus, scalar), _output(v_plus, scalar))


def poschl_teller_potential(x: RealOrArray, s: float) -> RealOrArray:
    """(s^2 - 1/4) cosec^2 x, which equals V_-(x, b) + b^2 at s = b - 1/2."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    return _output((s ** 2 - 0.25) / np.sin(x) ** 2, scalar)


def ground_state(w: Superpotential, grid: Grid) -> np.ndarray:
    """
    Zero-energy ground state exp(-int W dx) sampled on grid and normalized
    with the trapezoidal rule: sin^b x for Rosen-Morse, exp(-omega x^2 / 4)
    for the oscillator.

    Raises:
        DomainError: If the grid leaves the closed domain.
        NonNormalizableError: If the sampled norm is zero or not finite.
    """
    x = _inside_domain(w, grid.points, closed=True)
    with np.errstate(divide="ignore"):
        if w.kind == SuperpotentialKind.ROSEN_MORSE:
            _warn_unvalidated(w.b)
            log_values = w.b * np.log(np.abs(np.sin(x)))
        else:
            log_values = -0.25 * w.omega * x ** 2
    samples = np.exp(log_values - np.max(log_values))
    norm = trapezoid(samples ** 2, x)
    if not (np.isfinite(norm) and norm > 0.0):
        _exception_handler.raise_custom_exception(
            NonNormalizableError, f"Ground state norm is {norm}."
        )
    return samples / math.sqrt(norm)


def annihilation_residual(w: Superpotential, grid: Grid) -> float:
    """max |(d/dx + W) psi_0| over interior points, central differences."""
    psi = ground_state(w, grid)
    h = grid.spacing
    derivative = (psi[2:] - psi[:-2]) / (2.0 * h)
    residual = derivative + superpotential(w, grid.interior) * psi[1:-1]
    return float(np.max(np.abs(residual)))


def ground_state_residual(w: Superpotential, grid: Grid) -> float:
    """max |(-d^2/dx^2 + V_-) psi_0| with the five-point second-derivative stencil."""
    psi = ground_state(w, grid)
    h = grid.spacing
    second = (
        -psi[:-4] + 16.0 * psi[1:-3] - 30.0 * psi[2:-2] + 16.0 * psi[3:-1] - psi[4:]
    ) / (12.0 * h ** 2)
    v_minus = partner_potentials(w, grid.points[2:-2]).v_minus
    return float(np.max(np.abs(-second + v_minus * psi[2:-2])))


def rosen_morse_spectrum(b: float, n_levels: int) -> Spectrum:
    """E_n = (b + n)^2 - b^2, n = 0 ... n_levels - 1, for the unbroken regime b > 0."""
    if n_levels < 1:
        _exception_handler.raise_custom_exception(
            DomainError, f"At least one Rosen-Morse level is needed, got {n_levels}."
        )
    if not b > 0.0:
        _exception_handler.raise_custom_exception(
            DomainError, f"Rosen-Morse spectrum needs b > 0, got {b}."
        )
    _warn_unvalidated(b)
    n = np.arange(n_levels)
    return Spectrum((b + n) ** 2 - b ** 2, UnitSystem.natural_susy())


def sample_greens_triples(b: float, count: int, seed: int = DEFAULT_SEED) -> list:
    """Sample (x_f, x_i, E) away from the walls and from both pole ladders."""
    rng = np.random.default_rng(seed)
    s = b - 0.5
    samples = []
    while len(samples) < count:
        x_f, x_i = rng.uniform(0.2, math.pi - 0.2, size=2)
        energy = rng.uniform(-3.0, 12.0)
        poles = [(n + 1.0) ** 2 for n in range(5)] + [(n + s + 0.5) ** 2 for n in range(5)]
        if min(abs(energy - pole) for pole in poles) < 0.05:
            continue
        samples.append((float(x_f), float(x_i), float(energy)))
    return samples


def isw_limit_check(
    grid: Grid,
    energies: int,
    tol: float = 1e-9,
    potential_tol: float = POTENTIAL_IDENTITY_TOL,
    b: float = 1.0,
    seed: int = DEFAULT_SEED,
    sample_count: int = 20,
    policy: Optional[SeriesPolicy] = None
) -> LimitCheckArtifactEntity:
    """
    Checks that Rosen-Morse at parameter b reduces to the infinite well.

    Four checks are reported: V_- = -1 on the grid interior, the shifted
    spectrum equals (n + 1)^2 for ``energies`` levels, the Pöschl-Teller
    Green's function at s = b - 1/2 matches the infinite-well one within
    ``tol`` on random samples, and V_- differs from the Pöschl-Teller
    potential by -b^2. The three potential identities are held to
    ``potential_tol``. Failures are reported, not raised.
    """
    policy = policy or SeriesPolicy(rel_tol=1e-11)
    w = Superpotential.rosen_morse(b)
    x = grid.points
    x = x[(x > 0.0) & (x < math.pi)]
    v_minus = partner_potentials(w, x).v_minus
    checks = []

    constant_gap = float(np.max(np.abs(v_minus + 1.0)))
    checks.append(CheckResultArtifactEntity(
        "v_minus_constant", constant_gap <= potential_tol, constant_gap, potential_tol
    ))

    spectrum = rosen_morse_spectrum(b, energies).energies
    ladder = (np.arange(energies) + 1.0) ** 2
    spectrum_gap = float(np.max(np.abs(spectrum + 1.0 - ladder)))
    checks.append(CheckResultArtifactEntity(
        "spectrum_shift", spectrum_gap <= potential_tol, spectrum_gap, potential_tol
    ))

    greens_gap = 0.0
    for x_f, x_i, energy in sample_greens_triples(b, sample_count, seed):
        general = poschl_teller_greens(GreensQuery(b - 0.5, energy, x_f, x_i, policy))
        well = isw_greens(x_f, x_i, energy, policy)
        greens_gap = max(greens_gap, abs(general - well))
    checks.append(CheckResultArtifactEntity(
        "greens_reduction", greens_gap <= tol, greens_gap, tol
    ))

    shift = v_minus - poschl_teller_potential(x, b - 0.5) + b ** 2
    shift_gap = float(np.max(np.abs(shift) / np.maximum(1.0, np.abs(v_minus))))
    checks.append(CheckResultArtifactEntity(
        "poschl_teller_offset", shift_gap <= potential_tol, shift_gap, potential_tol
    ))

    report = LimitCheckArtifactEntity(b=b, checks=checks)
    for failure in report.failures:
        _logger.warning(
            "Limit check %s failed at b=%s: observed %.3e > %.1e",
            failure.name, b, failure.observed, failure.tolerance
        )
    return report
