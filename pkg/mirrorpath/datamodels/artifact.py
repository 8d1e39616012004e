import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from mirrorpath.datamodels.config import Grid, UnitSystem

from QMUtils.exceptions import AdvancedExceptionHandler, DomainError


_exception_handler = AdvancedExceptionHandler()


@dataclass(frozen=True)
class KernelValue:
    re: float
    im: float = 0.0

    @classmethod
    def from_complex(cls, value: complex) -> "KernelValue":
        value = complex(value)
        return cls(value.real, value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def to_dict(self) -> dict:
        return {"re": self.re, "im": self.im}


@dataclass
class Spectrum:
    """
    Ordered energies, optionally with eigenfunctions sampled on ``grid``.

    ``uncertainties`` is filled by estimators that produce error bars.
    """

    energies: np.ndarray
    units: UnitSystem = field(default_factory=UnitSystem)
    eigenfunctions: Optional[np.ndarray] = None
    grid: Optional[Grid] = None
    uncertainties: Optional[np.ndarray] = None

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        if self.energies.size > 1 and np.any(np.diff(self.energies) <= 0.0):
            _exception_handler.raise_custom_exception(
                DomainError, "Spectrum energies must be strictly increasing."
            )
        if self.uncertainties is not None:
            self.uncertainties = np.asarray(self.uncertainties, dtype=float)
        if self.eigenfunctions is None:
            return
        self.eigenfunctions = np.atleast_2d(np.asarray(self.eigenfunctions, dtype=float))
        if self.grid is None or self.eigenfunctions.shape[1] != self.grid.n_points:
            _exception_handler.raise_custom_exception(
                DomainError, "Sampled eigenfunctions need a grid of matching size."
            )
        norms = self.eigenfunctions ** 2 @ self.grid.trapezoid_weights()
        if np.any(np.abs(norms - 1.0) > 1e-6):
            _exception_handler.raise_custom_exception(
                DomainError, f"Eigenfunctions are not normalized: {norms}."
            )

    def __len__(self) -> int:
        return int(self.energies.size)

    def shifted(self, offset: float) -> "Spectrum":
        return Spectrum(self.energies + offset, self.units)

    def to_dict(self) -> dict:
        report = {"energies": self.energies.tolist()}
        if self.uncertainties is not None:
            report["uncertainties"] = self.uncertainties.tolist()
        return report


@dataclass
class TraceCurve:
    """
    Partition function Z(beta) sampled on increasing Euclidean times.

    Values must be positive, strictly decreasing and log-convex up to the
    quadrature noise ``convexity_tol``.
    """

    betas: np.ndarray
    values: np.ndarray
    provenance: str = "synthetic"
    convexity_tol: float = 1e-7

    def __post_init__(self):
        self.betas = np.asarray(self.betas, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.betas.shape != self.values.shape or self.betas.ndim != 1:
            _exception_handler.raise_custom_exception(
                DomainError, "Trace curve needs matching 1-d betas and values."
            )
        if np.any(np.diff(self.betas) <= 0.0):
            _exception_handler.raise_custom_exception(
                DomainError, "Trace curve betas must be increasing."
            )
        if np.any(self.values <= 0.0) or not np.all(np.isfinite(self.values)):
            _exception_handler.raise_custom_exception(
                DomainError, "Trace curve values must be finite and positive."
            )
        if np.any(np.diff(self.values) >= 0.0):
            _exception_handler.raise_custom_exception(
                DomainError, "Trace curve values must be strictly decreasing."
            )
        slopes = self.log_slopes()
        if slopes.size > 1:
            bends = np.diff(slopes)
            scale = np.maximum(1.0, np.abs(slopes[1:]))
            if np.any(bends < -self.convexity_tol * scale):
                _exception_handler.raise_custom_exception(
                    DomainError, f"Trace curve '{self.provenance}' is not log-convex."
                )

    def log_slopes(self) -> np.ndarray:
        """Divided differences of ln Z between neighbouring betas."""
        return np.diff(np.log(self.values)) / np.diff(self.betas)

    def to_dict(self) -> dict:
        return {
            "betas": self.betas.tolist(),
            "values": self.values.tolist(),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class EnergyEstimate:
    value: float
    error: float
    asymptotic: bool = True

    def to_dict(self) -> dict:
        return {"value": self.value, "error": self.error, "asymptotic": self.asymptotic}


@dataclass(frozen=True)
class PartnerPotentials:
    v_minus: float
    v_plus: float


@dataclass
class GridPropagator:
    """
    Euclidean propagator sum_n w_n psi_n(x_f) psi_n(x_i) from grid eigenpairs.

    ``eigenfunctions`` are sampled on the full grid including the walls and
    ``weights`` are the Boltzmann factors exp(-E_n beta / hbar).
    """

    grid: Grid
    beta: float
    weights: np.ndarray
    eigenfunctions: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.eigenfunctions = np.atleast_2d(np.asarray(self.eigenfunctions, dtype=float))
        self._interpolant = CubicSpline(self.grid.points, self.eigenfunctions, axis=1)

    @property
    def n_levels(self) -> int:
        return int(self.weights.size)

    @property
    def values(self) -> np.ndarray:
        """K(x_j, x_k) on the full grid."""
        return (self.eigenfunctions.T * self.weights) @ self.eigenfunctions

    def evaluate(self, x_f: float, x_i: float) -> float:
        """Spectral sum with cubic-spline eigenfunctions between grid nodes."""
        states = self._interpolant(np.array([x_f, x_i]))
        return float(np.sum(self.weights * states[:, 0] * states[:, 1]))

    def diagonal(self) -> np.ndarray:
        return self.weights @ self.eigenfunctions ** 2

    def diagonal_trace(self) -> float:
        return float(self.diagonal() @ self.grid.trapezoid_weights())


@dataclass
class CheckResultArtifactEntity:
    name: str
    passed: bool
    observed: float
    tolerance: float
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "message": self.message,
        }


@dataclass
class LimitCheckArtifactEntity:
    b: float
    checks: List[CheckResultArtifactEntity]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResultArtifactEntity]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


@dataclass
class SuiteReportArtifactEntity:
    suite: str
    checks: List[CheckResultArtifactEntity]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


@dataclass
class VerificationReportArtifactEntity:
    seed: int
    suites: List[SuiteReportArtifactEntity]

    @property
    def passed(self) -> bool:
        return bool(self.suites) and all(suite.passed for suite in self.suites)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "suites": [suite.to_dict() for suite in self.suites],
        }
