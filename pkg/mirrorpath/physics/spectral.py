"""
Eigenbasis representations: sine basis of the half-line and the infinite
well, normalized Hermite functions of the full and half oscillator, and the
Green's function series of the Pöschl-Teller family with its infinite-well
member at s = 1/2.
"""
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from mirrorpath.constants.common.numerics import (
    LADDER_CHECK_DEGREES,
    LEGENDRE_ROUTE_TOL,
    MAX_OSCILLATOR_INDEX,
    POLE_GUARD,
    POLE_ROOT_TOL,
    RESIDUE_STEPS,
)
from mirrorpath.datamodels.artifact import KernelValue
from mirrorpath.datamodels.config import (
    GreensQuery,
    Grid,
    HypergeometricArgs,
    SeriesPolicy,
    SystemKind,
    SystemSpec,
    TimeArgument,
    UnitSystem,
)
from mirrorpath.physics.specfun import gamma, hyp2f1, log_gamma

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    DomainError,
    IndexOverflowError,
    NearPoleError,
    RouteDisagreementError,
    SeriesTruncationError,
    UnsupportedModeError,
)
from QMUtils.logger import AdvancedLogger
from QMUtils.types import RealOrArray


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="spectral")


def _as_output(values: np.ndarray, scalar: bool) -> RealOrArray:
    return float(values) if scalar else values


# Energies.

def isw_energy(n: int, width: float = math.pi, units: Optional[UnitSystem] = None) -> float:
    """hbar^2 pi^2 (n + 1)^2 / (2 m L^2); (n + 1)^2 in natural_susy units at L = pi."""
    units = units or UnitSystem.natural_susy()
    return (units.hbar * math.pi * (n + 1) / width) ** 2 / (2.0 * units.mass)


def oscillator_energy(n: int, omega: float, units: Optional[UnitSystem] = None) -> float:
    units = units or UnitSystem()
    return (n + 0.5) * units.hbar * omega


def half_oscillator_energy(n: int, omega: float, units: Optional[UnitSystem] = None) -> float:
    """Odd levels of the parent oscillator: (2n + 3/2) hbar omega."""
    units = units or UnitSystem()
    return (2.0 * n + 1.5) * units.hbar * omega


def poschl_teller_energy(n: int, s: float) -> float:
    """(n + s + 1/2)^2 for V = (s^2 - 1/4) cosec^2 x in natural_susy units."""
    return (n + s + 0.5) ** 2


# Eigenstates.

def isw_eigenstate(n: int, x: RealOrArray, L: float = math.pi) -> RealOrArray:
    """sqrt(2/L) sin((n + 1) pi x / L) on [0, L]."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > L):
        _exception_handler.raise_custom_exception(
            DomainError, f"Infinite well eigenstates live on [0, {L}]."
        )
    values = math.sqrt(2.0 / L) * np.sin((n + 1) * math.pi * x / L)
    return _as_output(values, scalar)


def oscillator_eigenstates(
    n_max: int,
    x: RealOrArray,
    omega: float,
    u: Optional[UnitSystem] = None
) -> np.ndarray:
    """
    Normalized Hermite functions psi_0 ... psi_{n_max} at positions x.

    Uses psi_{k+1} = sqrt(2/(k+1)) xi psi_k - sqrt(k/(k+1)) psi_{k-1} with
    xi = sqrt(m omega / hbar) x, which never forms H_n or n! explicitly.

    Returns:
        np.ndarray: Shape (n_max + 1,) + shape of x.
    """
    u = u or UnitSystem()
    if n_max > MAX_OSCILLATOR_INDEX:
        _exception_handler.raise_custom_exception(
            IndexOverflowError,
            f"Oscillator index {n_max} exceeds {MAX_OSCILLATOR_INDEX}."
        )
    x = np.asarray(x, dtype=float)
    scale = math.sqrt(u.mass * omega / u.hbar)
    xi = scale * x
    states = np.empty((n_max + 1,) + x.shape)
    states[0] = math.sqrt(scale) * math.pi ** -0.25 * np.exp(-0.5 * xi ** 2)
    if n_max >= 1:
        states[1] = math.sqrt(2.0) * xi * states[0]
    for k in range(1, n_max):
        states[k + 1] = (
            math.sqrt(2.0 / (k + 1)) * xi * states[k]
            - math.sqrt(k / (k + 1.0)) * states[k - 1]
        )
    return states


def oscillator_eigenstate(
    n: int,
    x: RealOrArray,
    omega: float,
    u: Optional[UnitSystem] = None
) -> RealOrArray:
    scalar = np.isscalar(x)
    return _as_output(oscillator_eigenstates(n, x, omega, u)[n], scalar)


def half_oscillator_eigenstate(
    n: int,
    x: RealOrArray,
    omega: float,
    u: Optional[UnitSystem] = None
) -> RealOrArray:
    """sqrt(2) psi_{2n+1}, normalized on (0, inf) and zero at the wall."""
    scalar = np.isscalar(x)
    if np.any(np.asarray(x) < 0.0):
        _exception_handler.raise_custom_exception(
            DomainError, "Half-oscillator eigenstates live on x >= 0."
        )
    parent = oscillator_eigenstates(2 * n + 1, x, omega, u)[2 * n + 1]
    return _as_output(math.sqrt(2.0) * parent, scalar)


# Spectral kernels.

def _level_weights(energies: np.ndarray, t: TimeArgument, hbar: float) -> np.ndarray:
    if t.is_euclidean:
        return np.exp(-energies * t.value / hbar)
    return np.exp(-1j * energies * t.value / hbar)


def level_energies(sys: SystemSpec, n_levels: int) -> np.ndarray:
    """Exact lowest n_levels energies of a system with a discrete spectrum."""
    units = sys.units
    index = np.arange(n_levels)
    if sys.kind == SystemKind.INFINITE_WELL:
        return np.array([isw_energy(n, sys.width, units) for n in index])
    if sys.kind == SystemKind.OSCILLATOR:
        return (index + 0.5) * units.hbar * sys.omega
    if sys.kind == SystemKind.HALF_OSCILLATOR:
        return (2.0 * index + 1.5) * units.hbar * sys.omega
    _exception_handler.raise_custom_exception(
        UnsupportedModeError,
        f"No discrete spectrum for system '{sys.kind.value}'."
    )


def _spectral_terms(sys: SystemSpec, x_f: float, x_i: float, n_terms: int):
    """Returns (energies, psi_n(x_f) psi_n(x_i)) for the first n_terms levels."""
    energies = level_energies(sys, n_terms)
    positions = np.array([x_f, x_i])
    if sys.kind == SystemKind.INFINITE_WELL:
        k = (np.arange(n_terms) + 1) * math.pi / sys.width
        products = (2.0 / sys.width) * np.sin(k * x_f) * np.sin(k * x_i)
        return energies, products
    if sys.kind == SystemKind.OSCILLATOR:
        states = oscillator_eigenstates(n_terms - 1, positions, sys.omega, sys.units)
        return energies, states[:, 0] * states[:, 1]
    states = oscillator_eigenstates(2 * n_terms - 1, positions, sys.omega, sys.units)
    odd = math.sqrt(2.0) * states[1::2]
    return energies, odd[:, 0] * odd[:, 1]


def spectral_tail_bound(sys: SystemSpec, t: TimeArgument, n_terms: int) -> float:
    """Weight exp(-E_N beta / hbar) of the first omitted level; inf in real time."""
    if not t.is_euclidean:
        return math.inf
    first_omitted = level_energies(sys, n_terms + 1)[-1]
    return math.exp(-first_omitted * t.value / sys.units.hbar)


def spectral_kernel(
    sys: SystemSpec,
    x_f: float,
    x_i: float,
    t: TimeArgument,
    n_terms: int
) -> KernelValue:
    """
    Truncated eigen-expansion sum_n w_n psi_n(x_f) psi_n(x_i).

    The half-oscillator sum runs over the odd parent states only.
    """
    energies, products = _spectral_terms(sys, x_f, x_i, n_terms)
    terms = _level_weights(energies, t, sys.units.hbar) * products
    if t.is_euclidean:
        _logger.debug(
            "Spectral sum of %d terms, tail bound %.3e",
            n_terms, spectral_tail_bound(sys, t, n_terms)
        )
        return KernelValue(math.fsum(terms))
    return KernelValue(math.fsum(terms.real), math.fsum(terms.imag))


def parity_filtered_terms(
    n_terms: int,
    x_f: float,
    x_i: float,
    beta: float,
    omega: float,
    u: Optional[UnitSystem] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Term-by-term view of the half-oscillator image sum.

    Returns the image-subtracted parent terms
    w_n psi_n(x_f) [psi_n(x_i) - psi_n(-x_i)] and the odd-only terms
    2 w_n psi_n(x_f) psi_n(x_i) (zero for even n). The two arrays are equal
    elementwise because psi_n(-x) = (-1)^n psi_n(x) holds exactly.
    """
    u = u or UnitSystem()
    states = oscillator_eigenstates(n_terms - 1, np.array([x_f, x_i, -x_i]), omega, u)
    index = np.arange(n_terms)
    weights = np.exp(-(index + 0.5) * omega * beta)
    left = weights * states[:, 0]
    image_subtracted = left * (states[:, 1] - states[:, 2])
    odd_only = np.where(index % 2 == 1, 2.0 * (left * states[:, 1]), 0.0)
    return image_subtracted, odd_only


def sine_identity_check(k_samples: Sequence[float], x_pair: Tuple[float, float]) -> float:
    """Max |2 sin(kx) sin(ky) - Re[e^{ik(x-y)} - e^{ik(x+y)}]| over k_samples."""
    k = np.asarray(k_samples, dtype=float)
    if k.size == 0:
        return 0.0
    x, y = x_pair
    lhs = 2.0 * np.sin(k * x) * np.sin(k * y)
    rhs = np.real(np.exp(1j * k * (x - y)) - np.exp(1j * k * (x + y)))
    return float(np.max(np.abs(lhs - rhs)))


def sine_basis_kernel(
    x_f: float,
    x_i: float,
    beta: float,
    u: Optional[UnitSystem] = None,
    k_max: Optional[float] = None,
    n_k: int = 4001
) -> float:
    """
    Half-line kernel from its continuum sine basis,
    (2/pi) int_0^inf sin(k x_f) sin(k x_i) exp(-hbar k^2 beta / 2m) dk.

    The integrand is even in k, so the trapezoidal rule from 0 is spectrally
    accurate. The default cut-off leaves a Gaussian tail below e^-40.
    """
    u = u or UnitSystem()
    if k_max is None:
        k_max = math.sqrt(80.0 * u.mass / (u.hbar * beta))
    k = np.linspace(0.0, k_max, n_k)
    integrand = (
        np.sin(k * x_f) * np.sin(k * x_i)
        * np.exp(-u.hbar * k ** 2 * beta / (2.0 * u.mass))
    )
    return float(2.0 / math.pi * trapezoid(integrand, k))


def smeared_completeness(
    n_terms: int,
    f: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    L: float = math.pi
) -> float:
    """
    Sup-norm error of the n_terms infinite-well expansion of f on grid.

    Expansion coefficients are trapezoidal projections onto the sine basis.
    """
    x = grid.points
    samples = np.asarray(f(x), dtype=float)
    basis = np.array([isw_eigenstate(n, x, L) for n in range(n_terms)])
    coefficients = trapezoid(basis * samples, x, axis=1)
    reconstruction = coefficients @ basis
    return float(np.max(np.abs(reconstruction - samples)))


# Legendre functions of order -s.

def ferrers_legendre(
    s: float,
    n: int,
    theta: float,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """P^{-s}_{n+s}(cos theta) = tan^s(theta/2) F(-n-s, n+s+1; 1+s; sin^2(theta/2)) / Gamma(1+s)."""
    if not 0.0 < theta < math.pi:
        _exception_handler.raise_custom_exception(
            DomainError, f"theta must lie in (0, pi), got {theta}."
        )
    half_angle = 0.5 * theta
    args = HypergeometricArgs(-n - s, n + s + 1.0, 1.0 + s, math.sin(half_angle) ** 2)
    return math.tan(half_angle) ** s * hyp2f1(args, policy) / gamma(1.0 + s)


def legendre_degree_ladder(s: float, n_max: int, theta: RealOrArray) -> np.ndarray:
    """
    P^{-s}_{n+s}(cos theta) for n = 0 ... n_max by the degree recurrence

        (n + 2s + 1) P_{n+1} = (2n + 2s + 1) cos(theta) P_n - n P_{n-1},

    seeded with P_0 = (sin(theta) / 2)^s / Gamma(1 + s) and P_1 = cos(theta) P_0.

    Returns:
        np.ndarray: Shape (n_max + 1,) + shape of theta.
    """
    theta = np.asarray(theta, dtype=float)
    x = np.cos(theta)
    ladder = np.empty((n_max + 1,) + theta.shape)
    ladder[0] = (0.5 * np.sin(theta)) ** s / gamma(1.0 + s)
    if n_max >= 1:
        ladder[1] = x * ladder[0]
    for n in range(1, n_max):
        ladder[n + 1] = (
            (2.0 * n + 2.0 * s + 1.0) * x * ladder[n] - n * ladder[n - 1]
        ) / (n + 2.0 * s + 1.0)
    return ladder


def _hypergeometric_ferrers(s: float, n: int, theta: float, policy: SeriesPolicy) -> float:
    """ferrers_legendre with theta reflected into (0, pi/2], where sin^2(theta/2) <= 1/2."""
    if theta > 0.5 * math.pi:
        return (-1.0) ** n * ferrers_legendre(s, n, math.pi - theta, policy)
    return ferrers_legendre(s, n, theta, policy)


def checked_degree_ladder(
    s: float,
    n_max: int,
    theta: RealOrArray,
    policy: Optional[SeriesPolicy] = None
) -> np.ndarray:
    """
    legendre_degree_ladder with degrees up to LADDER_CHECK_DEGREES compared
    against the hypergeometric route at every angle inside (0, pi).

    Raises:
        RouteDisagreementError: If the routes differ by more than
            1e-8 * max(1, |hypergeometric value|).
    """
    policy = policy or SeriesPolicy()
    ladder = legendre_degree_ladder(s, n_max, theta)
    angles = np.asarray(theta, dtype=float).ravel()
    flat = ladder.reshape(n_max + 1, -1)
    for n in range(min(n_max, LADDER_CHECK_DEGREES) + 1):
        for k, angle in enumerate(angles):
            if not 0.0 < angle < math.pi:
                continue
            reference = _hypergeometric_ferrers(s, n, float(angle), policy)
            if abs(flat[n, k] - reference) > LEGENDRE_ROUTE_TOL * max(1.0, abs(reference)):
                _exception_handler.raise_custom_exception(
                    RouteDisagreementError,
                    f"Degree recurrence and hypergeometric route disagree at s={s}, "
                    f"n={n}, theta={angle}: {flat[n, k]!r} vs {reference!r}."
                )
    return ladder


def poschl_teller_eigenstates(
    s: float,
    n_max: int,
    x: RealOrArray,
    policy: Optional[SeriesPolicy] = None
) -> np.ndarray:
    """
    Normalized eigenfunctions N_n sqrt(sin x) P^{-s}_{n+s}(cos x), n <= n_max,
    with N_n^2 = (n + s + 1/2) Gamma(n + 2s + 1) / Gamma(n + 1).

    With a policy the low degrees of the ladder are checked against the
    hypergeometric route (see checked_degree_ladder).
    """
    x = np.asarray(x, dtype=float)
    index = np.arange(n_max + 1)
    log_ratio = log_gamma(2.0 * s + 1.0) + np.concatenate(
        ([0.0], np.cumsum(np.log((index[:-1] + 2.0 * s + 1.0) / (index[:-1] + 1.0))))
    )
    norms = np.exp(0.5 * (np.log(index + s + 0.5) + log_ratio))
    if policy is None:
        ladder = legendre_degree_ladder(s, n_max, x)
    else:
        ladder = checked_degree_ladder(s, n_max, x, policy)
    shape = (n_max + 1,) + (1,) * x.ndim
    return norms.reshape(shape) * np.sqrt(np.sin(x)) * ladder


# Green's functions.

def _check_pole_distance(energy: float, poles: Callable[[int], float], offset: float) -> None:
    if energy < 0.0:
        return
    nearest = max(0, int(round(math.sqrt(energy) - offset)))
    for n in range(max(0, nearest - 1), nearest + 2):
        if abs(energy - poles(n)) < POLE_GUARD:
            _exception_handler.raise_custom_exception(
                NearPoleError,
                f"E = {energy} is within {POLE_GUARD} of the pole E_{n} = {poles(n)}."
            )


def _zero_energy_solution(s: float, x: float, policy: SeriesPolicy) -> float:
    """Solution regular at x = 0 of -u'' + (s^2 - 1/4) cosec^2(x) u = 0."""
    half_angle = 0.5 * x
    args = HypergeometricArgs(0.5, 0.5, 1.0 + s, math.sin(half_angle) ** 2)
    return (
        math.sqrt(math.sin(x)) * math.tan(half_angle) ** s
        * hyp2f1(args, policy) / gamma(1.0 + s)
    )


def zero_energy_greens(
    s: float,
    x_f: float,
    x_i: float,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """
    G(x_f, x_i, 0) = -u_0(x<) u_pi(x>) Gamma(s + 1/2)^2 / 2.

    u_0 is the zero-energy solution regular at the left wall and
    u_pi(x) = u_0(pi - x); their Wronskian is 2 / Gamma(s + 1/2)^2.
    """
    policy = policy or SeriesPolicy()
    lower, upper = min(x_f, x_i), max(x_f, x_i)
    left = _zero_energy_solution(s, lower, policy)
    right = _zero_energy_solution(s, math.pi - upper, policy)
    return -0.5 * gamma(s + 0.5) ** 2 * left * right


def _terms_needed(energy: float, offset: float, order: int, tol: float) -> int:
    """
    Smallest N whose accelerated tail (k > k_N = N + offset) is below tol.

    The remainder terms are bounded by 2|E|^order / k^(2 order + 2) once
    k^2 >= 2|E|, and that sum is below 2|E|^order / ((2 order + 1) k_N^(2 order + 1)).
    """
    magnitude = abs(energy)
    if magnitude == 0.0:
        return 0
    power = 2 * order + 1
    k_tail = (2.0 * magnitude ** order / (power * tol)) ** (1.0 / power)
    k_tail = max(k_tail, math.sqrt(2.0 * magnitude))
    return max(1, int(math.ceil(k_tail - offset)) + 1)


def poschl_teller_greens(q: GreensQuery) -> float:
    """
    Green's function of V = (s^2 - 1/4) cosec^2 x on (0, pi) at energy E.

    The spectral series sum_n psi_n(x_f) psi_n(x_i) / (E - E_n) decays only
    like 1/n, so the E = 0 value is split off in closed form:

        G(E) = G(0) + sum_n psi_n(x_f) psi_n(x_i) E / (E_n (E - E_n)).

    Raises:
        NearPoleError: If E is within 1e-9 of some (n + s + 1/2)^2.
        SeriesTruncationError: If the remainder needs more than max_terms terms.
    """
    s, energy, policy = q.s, q.energy, q.policy
    _check_pole_distance(energy, lambda n: poschl_teller_energy(n, s), s + 0.5)
    base = zero_energy_greens(s, q.x_f, q.x_i, policy)
    n_terms = _terms_needed(energy, s + 0.5, 1, policy.rel_tol * max(1.0, abs(base)))
    if n_terms == 0:
        return base
    if n_terms > policy.max_terms:
        raise SeriesTruncationError("Pöschl-Teller Green's series", policy.max_terms)
    states = poschl_teller_eigenstates(s, n_terms - 1, np.array([q.x_f, q.x_i]), policy)
    levels = (np.arange(n_terms) + s + 0.5) ** 2
    remainder = states[:, 0] * states[:, 1] * energy / (levels * (energy - levels))
    _logger.debug("Pöschl-Teller Green's series used %d terms", n_terms)
    return math.fsum(np.concatenate(([base], remainder)))


def _cosine_sum_k2(t: float) -> float:
    """sum_{k>=1} cos(kt) / k^2 for t in [0, 2 pi]."""
    return math.pi ** 2 / 6.0 - math.pi * t / 2.0 + t ** 2 / 4.0


def _cosine_sum_k4(t: float) -> float:
    """sum_{k>=1} cos(kt) / k^4 for t in [0, 2 pi]."""
    return (
        math.pi ** 4 / 90.0 - math.pi ** 2 * t ** 2 / 12.0
        + math.pi * t ** 3 / 12.0 - t ** 4 / 48.0
    )


def isw_greens(
    x_f: float,
    x_i: float,
    E: float,
    policy: Optional[SeriesPolicy] = None
) -> float:
    """
    Infinite-well Green's function sum_n psi_n(x_f) psi_n(x_i) / (E - (n+1)^2)
    on (0, pi) in natural_susy units.

    The 1/k^2 and 1/k^4 parts of the series are summed in closed form, the
    remaining terms psi psi E^2 / (k^4 (E - k^2)) decay like 1/k^6.
    """
    policy = policy or SeriesPolicy()
    for name, value in (("x_f", x_f), ("x_i", x_i)):
        if not 0.0 <= value <= math.pi:
            _exception_handler.raise_custom_exception(
                DomainError, f"{name} must lie in [0, pi], got {value}."
            )
    _check_pole_distance(E, lambda n: (n + 1.0) ** 2, 1.0)
    gap, total = abs(x_f - x_i), x_f + x_i
    first = (_cosine_sum_k2(gap) - _cosine_sum_k2(total)) / math.pi
    second = (_cosine_sum_k4(gap) - _cosine_sum_k4(total)) / math.pi
    n_terms = _terms_needed(E, 1.0, 2, policy.rel_tol * max(1.0, abs(first)))
    if n_terms > policy.max_terms:
        raise SeriesTruncationError("infinite well Green's series", policy.max_terms)
    k = np.arange(1, n_terms + 1, dtype=float)
    products = (2.0 / math.pi) * np.sin(k * x_f) * np.sin(k * x_i)
    remainder = products * E ** 2 / (k ** 4 * (E - k ** 2))
    return math.fsum(np.concatenate(([-first, -E * second], remainder)))


def _greens_function(s: float, x_f: float, x_i: float, policy: SeriesPolicy) -> Callable[[float], float]:
    if s == 0.5:
        return lambda energy: isw_greens(x_f, x_i, energy, policy)
    return lambda energy: poschl_teller_greens(GreensQuery(s, energy, x_f, x_i, policy))


def greens_residue(
    x_f: float,
    x_i: float,
    n: int,
    s: float = 0.5,
    policy: Optional[SeriesPolicy] = None,
    steps: Sequence[float] = RESIDUE_STEPS
) -> float:
    """
    Residue of G at E_n = (n + s + 1/2)^2 by Richardson extrapolation.

    Symmetric samples (d G(E_n + d) - d G(E_n - d)) / 2 are even in d, so
    the extrapolation table eliminates powers of d^2 with halving steps.
    """
    policy = policy or SeriesPolicy()
    greens = _greens_function(s, x_f, x_i, policy)
    pole = poschl_teller_energy(n, s)
    table = [
        0.5 * step * (greens(pole + step) - greens(pole - step))
        for step in steps
    ]
    for level in range(1, len(table)):
        factor = 4.0 ** level
        table = [
            (factor * table[j + 1] - table[j]) / (factor - 1.0)
            for j in range(len(table) - 1)
        ]
    return table[0]


def locate_greens_poles(
    x_f: float,
    x_i: float,
    e_min: float,
    e_max: float,
    n_scan: int = 400,
    s: float = 0.5,
    policy: Optional[SeriesPolicy] = None
) -> np.ndarray:
    """
    Poles of G(x_f, x_i, E) in [e_min, e_max].

    1/G is scanned for sign changes and refined with Brent's method. Sign
    changes where 1/G jumps through infinity (zeros of G) are rejected by
    requiring |1/G| < 1e-6 at the refined root.
    """
    policy = policy or SeriesPolicy()
    greens = _greens_function(s, x_f, x_i, policy)

    def reciprocal(energy: float) -> float:
        try:
            value = greens(energy)
        except NearPoleError:
            return 0.0
        return 1.0 / value if value != 0.0 else math.inf

    energies = np.linspace(e_min, e_max, n_scan)
    values = [reciprocal(energy) for energy in energies]
    poles = []
    for left, right, f_left, f_right in zip(energies[:-1], energies[1:], values[:-1], values[1:]):
        if f_left * f_right > 0.0:
            continue
        root = brentq(reciprocal, left, right, xtol=1e-13, rtol=1e-15)
        if abs(reciprocal(root)) >= POLE_ROOT_TOL:
            continue
        if poles and abs(root - poles[-1]) < POLE_GUARD:
            continue
        poles.append(root)
    _logger.info("Located %d Green's function poles in [%s, %s]", len(poles), e_min, e_max)
    return np.array(poles)
