"""
Euclidean traces Z(beta) = int K(x, x, beta) dx of the diagonal kernels and
recovery of the discrete spectrum from Z(beta) = sum_n exp(-E_n beta / hbar).
"""
import math
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid

from mirrorpath.constants.common.numerics import (
    AITKEN_MAX_RATIO,
    ASYMPTOTIC_TOL,
    MIN_GAP_RESOLUTION,
    PEEL_AGREEMENT_TOL,
    PENCIL_RANK_TOL,
    TAIL_WARNING_RATIO,
    TRACE_GAUSSIAN_EXPONENT,
    TRACE_GRID_POINTS,
)
from mirrorpath.datamodels.artifact import EnergyEstimate, Spectrum, TraceCurve
from mirrorpath.datamodels.config import (
    Grid,
    GridHamiltonian,
    SeriesPolicy,
    SystemKind,
    SystemSpec,
    UnitSystem,
)
from mirrorpath.physics.kernels import euclidean_kernel_array
from mirrorpath.physics.oracle import grid_eigensolve

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    ConvergenceError,
    DomainError,
    IllConditionedError,
    UnsupportedModeError,
)
from QMUtils.logger import AdvancedLogger
from QMUtils.validation import is_uniform_ladder, validate_positive


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="trace")


def _diagonal_decay_rate(sys: SystemSpec, beta: float) -> float:
    """Gaussian decay rate a of K(x, x, beta) ~ exp(-a x^2) for the oscillators."""
    units = sys.units
    return units.mass * sys.omega / units.hbar * math.tanh(0.5 * sys.omega * beta)


def default_trace_grid(sys: SystemSpec, beta: float, n_points: int = TRACE_GRID_POINTS) -> Grid:
    """
    Trace quadrature grid: the whole well, or the oscillator diagonal out to
    where exp(-a x^2) has dropped to exp(-45).
    """
    if sys.kind == SystemKind.INFINITE_WELL:
        return Grid(0.0, sys.width, n_points)
    if sys.kind in (SystemKind.OSCILLATOR, SystemKind.HALF_OSCILLATOR):
        extent = math.sqrt(TRACE_GAUSSIAN_EXPONENT / _diagonal_decay_rate(sys, beta))
        lower = 0.0 if sys.kind == SystemKind.HALF_OSCILLATOR else -extent
        return Grid(lower, extent, n_points)
    _exception_handler.raise_custom_exception(
        UnsupportedModeError,
        f"The trace of '{sys.kind.value}' diverges: its spectrum is continuous."
    )


def kernel_trace(
    sys: SystemSpec,
    beta: float,
    quadrature: Optional[Grid] = None,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """
    Trapezoidal trace of the Euclidean diagonal kernel over the allowed region.

    A warning is logged when the integrand at an open end of the grid exceeds
    1e-9 times its peak.
    """
    validate_positive(beta, "beta")
    grid = quadrature or default_trace_grid(sys, beta)
    x = grid.points
    diagonal = euclidean_kernel_array(sys, x, x, beta, policy)
    peak = float(np.max(np.abs(diagonal)))
    open_ends = []
    if sys.kind == SystemKind.OSCILLATOR:
        open_ends = [diagonal[0], diagonal[-1]]
    elif sys.kind == SystemKind.HALF_OSCILLATOR:
        open_ends = [diagonal[-1]]
    if any(abs(end) > TAIL_WARNING_RATIO * peak for end in open_ends):
        _logger.warning(
            "Trace grid [%s, %s] truncates the diagonal of '%s' at beta=%s",
            grid.x_min, grid.x_max, sys.kind.value, beta
        )
    return float(trapezoid(diagonal, x))


def trace_curve(
    sys: SystemSpec,
    betas: Sequence[float],
    policy: Optional[SeriesPolicy] = None
) -> TraceCurve:
    values = [kernel_trace(sys, beta, policy=policy) for beta in betas]
    return TraceCurve(np.asarray(betas, dtype=float), np.array(values), f"kernel_trace:{sys.kind.value}")


def default_beta_ladder(sys: SystemSpec, n_points: int, n_grid: int = 801) -> np.ndarray:
    """
    Uniform ladder beta_k = (k + 1) beta_min with exp(-E_0 beta_min) = 1/4,
    using a coarse grid estimate of E_0 on the beta = 1 trace region.
    """
    coarse = default_trace_grid(sys, 1.0, n_grid)
    rough = grid_eigensolve(GridHamiltonian.for_system(sys, coarse), 1).energies[0]
    beta_min = sys.units.hbar * math.log(4.0) / rough
    return beta_min * np.arange(1, n_points + 1)


def extract_ground_energy(
    curve: TraceCurve,
    tol: float = ASYMPTOTIC_TOL,
    hbar: float = 1.0
) -> EnergyEstimate:
    """
    E_0 from the large-beta decay of Z.

    Local slopes e_k = -hbar d ln Z / d beta approach E_0 geometrically on a
    uniform ladder, so Aitken's delta-squared step is applied to the last
    three slopes when available. Otherwise the last slope is returned. The
    error estimate is the last change of the estimates.
    """
    if curve.betas.size < 3:
        _exception_handler.raise_custom_exception(
            DomainError, "Ground-energy extraction needs at least 3 curve points."
        )
    slopes = -hbar * curve.log_slopes()
    estimate = float(slopes[-1])
    error = abs(float(slopes[-1] - slopes[-2]))
    if slopes.size >= 3 and is_uniform_ladder(curve.betas):
        first, second = slopes[-2] - slopes[-3], slopes[-1] - slopes[-2]
        bend = second - first
        if abs(bend) > 1e-12 * max(1.0, abs(estimate)) and abs(second) < abs(first):
            accelerated = float(slopes[-1] - second ** 2 / bend)
            error = abs(accelerated - estimate)
            estimate = accelerated
    asymptotic = error <= tol * max(1.0, abs(estimate))
    if not asymptotic:
        _logger.warning(
            "Ground energy %.6f from '%s' is not asymptotic (error %.2e)",
            estimate, curve.provenance, error
        )
    return EnergyEstimate(estimate, error, asymptotic)


def _matrix_pencil(values: np.ndarray, step: float, hbar: float) -> np.ndarray:
    """Decay rates of a sum of real exponentials sampled with uniform step."""
    n_samples = values.size
    pencil = n_samples // 2
    hankel = np.array([values[i:i + pencil + 1] for i in range(n_samples - pencil)])
    _, singular, right = np.linalg.svd(hankel, full_matrices=False)
    rank = int(np.count_nonzero(singular > PENCIL_RANK_TOL * singular[0]))
    basis = right[:rank].T
    shift = np.linalg.pinv(basis[:-1]) @ basis[1:]
    roots = np.linalg.eigvals(shift)
    real = roots[np.abs(roots.imag) <= 1e-8 * np.maximum(1.0, np.abs(roots))].real
    real = real[(real > 0.0) & (real < 1.0)]
    return np.sort(-hbar * np.log(real) / step)


def _plateau_level(slopes: np.ndarray) -> float:
    """
    Local slope where consecutive slopes agree best. When that plateau is the
    large-beta end of the ladder and the slopes still shrink geometrically,
    Aitken's step is applied to the last three.
    """
    finite = np.isfinite(slopes)
    candidates = [
        (abs(slopes[j + 1] - slopes[j]), j)
        for j in range(slopes.size - 1)
        if finite[j] and finite[j + 1]
    ]
    if not candidates:
        return math.nan
    _, j = min(candidates)
    level = float(slopes[j + 1])
    if j + 2 == slopes.size and j >= 1 and finite[j - 1]:
        first, second = slopes[j] - slopes[j - 1], slopes[j + 1] - slopes[j]
        if first != 0.0 and 0.0 < second / first < AITKEN_MAX_RATIO:
            level -= float(second ** 2 / (second - first))
    return level


def _peel(curve: TraceCurve, n_levels: int, hbar: float) -> np.ndarray:
    """Sequential subtraction of unit-amplitude exponentials, one plateau level at a time."""
    remainder = curve.values.copy()
    estimates = []
    for _ in range(n_levels):
        with np.errstate(invalid="ignore", divide="ignore"):
            slopes = -hbar * np.diff(np.log(remainder)) / np.diff(curve.betas)
        level = _plateau_level(slopes)
        estimates.append(level)
        if math.isnan(level):
            break
        remainder = remainder - np.exp(-level * curve.betas / hbar)
    estimates += [math.nan] * (n_levels - len(estimates))
    return np.array(estimates)


def _pencil_spread(values: np.ndarray, energies: np.ndarray, step: float, hbar: float) -> np.ndarray:
    """Change of the fitted levels when the first (smallest beta) sample is dropped."""
    shifted = _matrix_pencil(values[1:], step, hbar) if values.size > 2 else np.empty(0)
    if shifted.size < energies.size:
        return np.full(energies.size, math.inf)
    return np.abs(energies - shifted[:energies.size])


def extract_excited_energies(
    curve: TraceCurve,
    n_levels: int,
    hbar: float = 1.0
) -> Spectrum:
    """
    Lowest n_levels energies of a uniformly sampled trace curve.

    The matrix-pencil fit of the sampled exponentials gives the reported
    energies. Their uncertainty is the shift of each level when the fit is
    repeated without the first sample. Peeling off unit-amplitude
    exponentials one level at a time is the second route, and it must land
    within the larger of that uncertainty and 2% of the level.

    Raises:
        DomainError: If the ladder is not uniform or has fewer than
            2 * n_levels points.
        IllConditionedError: If the fit cannot resolve n_levels levels.
        ConvergenceError: If peeling disagrees with the fit.
    """
    if curve.betas.size < 2 * n_levels or not is_uniform_ladder(curve.betas):
        _exception_handler.raise_custom_exception(
            DomainError,
            f"Excited-level extraction needs a uniform ladder of >= {2 * n_levels} points."
        )
    step = float(curve.betas[1] - curve.betas[0])
    pencil = _matrix_pencil(curve.values, step, hbar)
    if pencil.size < n_levels:
        _exception_handler.raise_custom_exception(
            IllConditionedError,
            f"Only {pencil.size} of {n_levels} levels resolved from '{curve.provenance}'."
        )
    energies = pencil[:n_levels]
    gaps = np.diff(energies)
    beta_min = float(curve.betas[0])
    if gaps.size and float(np.min(gaps)) * beta_min / hbar < MIN_GAP_RESOLUTION:
        _exception_handler.raise_custom_exception(
            IllConditionedError,
            f"Level gaps {gaps} are below the resolution of beta_min = {beta_min}."
        )
    uncertainties = _pencil_spread(curve.values, energies, step, hbar)
    peeled = _peel(curve, n_levels, hbar)
    for level, (fit, peel, spread) in enumerate(zip(energies, peeled, uncertainties)):
        allowed = PEEL_AGREEMENT_TOL * max(1.0, abs(fit))
        if math.isfinite(spread):
            allowed = max(allowed, spread)
        if not abs(fit - peel) <= allowed:
            _exception_handler.raise_custom_exception(
                ConvergenceError,
                f"Level {level} of '{curve.provenance}': matrix pencil {fit:.6f} and "
                f"peeling {peel:.6f} differ by more than {allowed:.2e}."
            )
    return Spectrum(energies, UnitSystem(hbar=hbar), uncertainties=uncertainties)
