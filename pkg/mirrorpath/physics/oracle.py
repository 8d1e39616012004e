"""
Independent oracles for the closed-form kernels: a finite-difference grid
Hamiltonian with Dirichlet walls, and the time-sliced composition of short
Euclidean image kernels over the allowed region.
"""
import math
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import LinAlgError, eigh_tridiagonal

from mirrorpath.constants.common.numerics import (
    COMPOSITION_GRID_POINTS,
    HALF_SPACE_EXTENT_FACTOR,
    SLICE_GRID_POINTS,
)
from mirrorpath.datamodels.artifact import GridPropagator, KernelValue, Spectrum
from mirrorpath.datamodels.config import (
    Grid,
    GridHamiltonian,
    SeriesPolicy,
    SliceConfig,
    SliceKernel,
    SystemKind,
    SystemSpec,
)
from mirrorpath.physics.kernels import euclidean_kernel_array

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    ConvergenceError,
    DomainError,
    UnsupportedModeError,
)
from QMUtils.logger import AdvancedLogger


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="oracle")


def default_grid(sys: SystemSpec, beta: float, n_points: int = COMPOSITION_GRID_POINTS) -> Grid:
    """
    Quadrature grid over the allowed region.

    Half-spaces are cut at 12 times the larger of the thermal and oscillator
    lengths, where the Gaussian tails of the kernels are negligible.
    """
    if sys.kind == SystemKind.INFINITE_WELL:
        return Grid(0.0, sys.width, n_points)
    if sys.kind in (SystemKind.HALF_LINE, SystemKind.HALF_OSCILLATOR):
        return Grid(0.0, HALF_SPACE_EXTENT_FACTOR * sys.length_scale(beta), n_points)
    _exception_handler.raise_custom_exception(
        UnsupportedModeError, f"No bounded quadrature region for '{sys.kind.value}'."
    )


def grid_eigensolve(h: GridHamiltonian, n_levels: int) -> Spectrum:
    """
    Lowest eigenpairs of the tridiagonal grid Hamiltonian.

    LAPACK stebz/stein (bisection on Sturm counts plus inverse iteration) is
    used. Eigenvectors are divided by sqrt(h), padded with zeros at the walls
    and signed so that their largest entry is positive.

    Raises:
        DomainError: If n_levels exceeds the number of interior points.
        ConvergenceError: If the eigensolver fails.
    """
    interior = h.grid.n_points - 2
    if not 1 <= n_levels <= interior:
        _exception_handler.raise_custom_exception(
            DomainError, f"n_levels must lie in [1, {interior}], got {n_levels}."
        )
    try:
        energies, vectors = eigh_tridiagonal(
            h.diagonal,
            h.off_diagonal,
            select="i",
            select_range=(0, n_levels - 1),
            lapack_driver="stebz",
        )
    except (LinAlgError, ValueError) as exc:
        _exception_handler.handle_exception(exc, "Tridiagonal eigensolver failed.")
        raise ConvergenceError(f"Tridiagonal eigensolver failed: {exc}") from exc

    vectors = vectors / math.sqrt(h.grid.spacing)
    peaks = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(n_levels)]
    vectors = vectors * np.sign(peaks)
    states = np.zeros((n_levels, h.grid.n_points))
    states[:, 1:-1] = vectors.T
    _logger.debug("Grid eigensolve: %d levels on %d points", n_levels, h.grid.n_points)
    return Spectrum(energies, h.units, states, h.grid)


def grid_propagator(h: GridHamiltonian, beta: float, n_levels: int) -> GridPropagator:
    """Euclidean spectral propagator from the lowest n_levels grid eigenpairs."""
    if not beta > 0.0:
        _exception_handler.raise_custom_exception(
            UnsupportedModeError, "Grid propagator is Euclidean only (beta > 0)."
        )
    spectrum = grid_eigensolve(h, n_levels)
    weights = np.exp(-spectrum.energies * beta / h.units.hbar)
    return GridPropagator(h.grid, beta, weights, spectrum.eigenfunctions)


def _slice_system(sys: SystemSpec, per_slice_kernel: SliceKernel) -> SystemSpec:
    """Short-time kernel used for each slice of ``sys``."""
    if sys.kind in (SystemKind.FREE_LINE, SystemKind.OSCILLATOR):
        _exception_handler.raise_custom_exception(
            UnsupportedModeError, "Time slicing needs a system with a wall at the origin."
        )
    if per_slice_kernel == SliceKernel.FREE_IMAGE:
        return SystemSpec.half_line(sys.units)
    if per_slice_kernel == SliceKernel.WELL_IMAGE_SUM and sys.kind == SystemKind.INFINITE_WELL:
        return sys
    if per_slice_kernel == SliceKernel.MEHLER_IMAGE and sys.kind == SystemKind.HALF_OSCILLATOR:
        return sys
    _exception_handler.raise_custom_exception(
        UnsupportedModeError,
        f"Slice kernel '{per_slice_kernel.value}' does not fit system '{sys.kind.value}'."
    )


def sliced_kernel(
    sys: SystemSpec,
    cfg: SliceConfig,
    x_f: float,
    x_i: float,
    beta: float,
    policy: Optional[SeriesPolicy] = None
) -> KernelValue:
    """
    n-slice Euclidean composition over the allowed region.

    Each slice is exp(-U eps / 2 hbar) K_slice(eps) exp(-U eps / 2 hbar), where
    U is the part of the potential not already inside K_slice. Intermediate
    positions are integrated with the trapezoidal rule on the slice grid.
    """
    slice_sys = _slice_system(sys, cfg.per_slice_kernel)
    grid = cfg.grid or default_grid(sys, beta, SLICE_GRID_POINTS)
    epsilon = beta / cfg.n_slices
    hbar = sys.units.hbar

    def half_step(x):
        residual = sys.potential(x) - slice_sys.potential(x)
        return np.exp(-0.5 * epsilon * residual / hbar)

    def slice_kernel(left, right):
        return euclidean_kernel_array(slice_sys, left, right, epsilon, policy)

    if cfg.n_slices == 1:
        value = half_step(x_f) * slice_kernel(x_f, x_i) * half_step(x_i)
        return KernelValue(float(value))

    x = grid.points
    weights = grid.trapezoid_weights()
    factors = half_step(x)
    transfer = factors[:, None] * slice_kernel(x[:, None], x[None, :]) * factors[None, :]
    state = factors * slice_kernel(x, x_i) * half_step(x_i)
    for _ in range(cfg.n_slices - 2):
        state = transfer @ (weights * state)
    closing = half_step(x_f) * slice_kernel(x_f, x) * factors
    _logger.debug("Sliced composition: %d slices on %d points", cfg.n_slices, grid.n_points)
    return KernelValue(float(closing @ (weights * state)))


def composition_residual(
    sys: SystemSpec,
    x_f: float,
    x_i: float,
    beta_1: float,
    beta_2: float,
    grid: Optional[Grid] = None,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """
    |int K(x_f, y, beta_2) K(y, x_i, beta_1) dy - K(x_f, x_i, beta_1 + beta_2)|
    with the integral over the allowed region by the trapezoidal rule.
    """
    total = beta_1 + beta_2
    grid = grid or default_grid(sys, total)
    y = grid.points
    left = euclidean_kernel_array(sys, x_f, y, beta_2, policy)
    right = euclidean_kernel_array(sys, y, x_i, beta_1, policy)
    composed = trapezoid(left * right, y)
    direct = float(euclidean_kernel_array(sys, x_f, x_i, total, policy))
    return abs(float(composed) - direct)


def convergence_order(errors: Sequence[float], n_values: Sequence[float]) -> float:
    """Least-squares slope p of log(error) = c - p log(n)."""
    errors = np.asarray(errors, dtype=float)
    n_values = np.asarray(n_values, dtype=float)
    if errors.size < 2 or np.any(errors <= 0.0):
        _exception_handler.raise_custom_exception(
            DomainError, "Convergence order needs at least two positive errors."
        )
    slope, _ = np.polyfit(np.log(n_values), np.log(errors), 1)
    return float(-slope)
