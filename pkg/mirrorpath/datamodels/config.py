import math
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from mirrorpath.constants.common import env as env_constants
from mirrorpath.constants.common import numerics as numeric_constants
from mirrorpath.constants.pipeline import verification as verification_constants

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    DomainError,
    InvalidRequestError,
    ZeroTimeError,
)
from QMUtils.io import read_yaml_to_dict
from QMUtils.validation import validate_positive


_exception_handler = AdvancedExceptionHandler()


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation contract shared by every infinite sum."""

    rel_tol: float = numeric_constants.DEFAULT_REL_TOL
    max_terms: int = numeric_constants.DEFAULT_MAX_TERMS

    def __post_init__(self):
        validate_positive(self.rel_tol, "rel_tol")
        _exception_handler.validate_input(self.max_terms, (int, np.integer), "max_terms")
        if self.max_terms < 1:
            _exception_handler.raise_custom_exception(
                DomainError, f"max_terms must be >= 1, got {self.max_terms}."
            )


@dataclass(frozen=True)
class HypergeometricArgs:
    """Parameters of the Gauss series F(a, b; c; z)."""

    a: float
    b: float
    c: float
    z: float


@dataclass(frozen=True)
class UnitSystem:
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        validate_positive(self.hbar, "hbar")
        validate_positive(self.mass, "mass")

    @classmethod
    def natural_susy(cls) -> "UnitSystem":
        """Units with hbar = 2m = 1, in which H = -d^2/dx^2 + V."""
        return cls(
            hbar=numeric_constants.NATURAL_SUSY_HBAR,
            mass=numeric_constants.NATURAL_SUSY_MASS,
        )

    def convert_energies(self, energies, target: "UnitSystem", length_scale: float = 1.0):
        """
        Maps free-particle energies between unit systems at fixed length scale.

        An energy written as hbar^2 k^2 / (2m) keeps its wave number k, so the
        value scales with hbar^2/m of the target over the source.
        """
        factor = (target.hbar ** 2 / target.mass) / (self.hbar ** 2 / self.mass)
        return np.asarray(energies, dtype=float) * factor / length_scale ** 2


class TimeKind(str, Enum):
    REAL = "real"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class TimeArgument:
    """
    Elapsed time of a propagator.

    ``REAL`` carries tau = t_f - t_i (any non-zero value), ``EUCLIDEAN``
    carries beta > 0 with the Boltzmann factor exp(-E beta / hbar).
    """

    kind: TimeKind
    value: float

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value):
            _exception_handler.raise_custom_exception(
                DomainError, f"Time value must be finite, got {value}."
            )
        if value == 0.0:
            _exception_handler.raise_custom_exception(
                ZeroTimeError, "Propagator requested at zero elapsed time."
            )
        if self.kind == TimeKind.EUCLIDEAN and value < 0.0:
            _exception_handler.raise_custom_exception(
                DomainError, f"Euclidean time must be > 0, got {value}."
            )

    @classmethod
    def real(cls, tau: float) -> "TimeArgument":
        return cls(TimeKind.REAL, tau)

    @classmethod
    def euclidean(cls, beta: float) -> "TimeArgument":
        return cls(TimeKind.EUCLIDEAN, beta)

    @property
    def is_euclidean(self) -> bool:
        return self.kind == TimeKind.EUCLIDEAN


class SystemKind(str, Enum):
    FREE_LINE = "free"
    HALF_LINE = "half-line"
    INFINITE_WELL = "isw"
    OSCILLATOR = "ho"
    HALF_OSCILLATOR = "half-ho"


@dataclass(frozen=True)
class SystemSpec:
    """
    One of the supported one-dimensional systems with its units.

    ``width`` is required for the infinite well and ``omega`` for both
    oscillators.
    """

    kind: SystemKind
    units: UnitSystem = field(default_factory=UnitSystem)
    width: Optional[float] = None
    omega: Optional[float] = None

    def __post_init__(self):
        if self.kind == SystemKind.INFINITE_WELL:
            if self.width is None:
                _exception_handler.raise_custom_exception(
                    DomainError, "Infinite well requires a width."
                )
            validate_positive(self.width, "width")
        if self.kind in (SystemKind.OSCILLATOR, SystemKind.HALF_OSCILLATOR):
            if self.omega is None:
                _exception_handler.raise_custom_exception(
                    DomainError, "Oscillator systems require omega."
                )
            validate_positive(self.omega, "omega")

    @classmethod
    def free_line(cls, units: Optional[UnitSystem] = None) -> "SystemSpec":
        return cls(SystemKind.FREE_LINE, units or UnitSystem())

    @classmethod
    def half_line(cls, units: Optional[UnitSystem] = None) -> "SystemSpec":
        return cls(SystemKind.HALF_LINE, units or UnitSystem())

    @classmethod
    def infinite_well(cls, width: float, units: Optional[UnitSystem] = None) -> "SystemSpec":
        return cls(SystemKind.INFINITE_WELL, units or UnitSystem(), width=width)

    @classmethod
    def oscillator(cls, omega: float, units: Optional[UnitSystem] = None) -> "SystemSpec":
        return cls(SystemKind.OSCILLATOR, units or UnitSystem(), omega=omega)

    @classmethod
    def half_oscillator(cls, omega: float, units: Optional[UnitSystem] = None) -> "SystemSpec":
        return cls(SystemKind.HALF_OSCILLATOR, units or UnitSystem(), omega=omega)

    @property
    def allowed_region(self) -> Tuple[float, float]:
        if self.kind == SystemKind.INFINITE_WELL:
            return 0.0, float(self.width)
        if self.kind in (SystemKind.HALF_LINE, SystemKind.HALF_OSCILLATOR):
            return 0.0, math.inf
        return -math.inf, math.inf

    @property
    def has_wall_at_origin(self) -> bool:
        return self.kind in (
            SystemKind.HALF_LINE,
            SystemKind.INFINITE_WELL,
            SystemKind.HALF_OSCILLATOR,
        )

    def potential(self, x):
        """Potential inside the allowed region, vectorized over x."""
        x = np.asarray(x, dtype=float)
        if self.kind in (SystemKind.OSCILLATOR, SystemKind.HALF_OSCILLATOR):
            return 0.5 * self.units.mass * self.omega ** 2 * x ** 2
        return np.zeros_like(x)

    def length_scale(self, beta: float) -> float:
        """Largest of the thermal and oscillator lengths at Euclidean time beta."""
        scale = math.sqrt(self.units.hbar * beta / self.units.mass)
        if self.omega is not None:
            scale = max(scale, math.sqrt(self.units.hbar / (self.units.mass * self.omega)))
        return scale


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        _exception_handler.validate_input(self.n_points, (int, np.integer), "n_points")
        if self.n_points < 2:
            _exception_handler.raise_custom_exception(
                DomainError, f"Grid needs at least 2 points, got {self.n_points}."
            )
        if not self.x_min < self.x_max:
            _exception_handler.raise_custom_exception(
                DomainError, f"Grid requires x_min < x_max, got [{self.x_min}, {self.x_max}]."
            )

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    def trapezoid_weights(self) -> np.ndarray:
        weights = np.full(self.n_points, self.spacing)
        weights[0] = weights[-1] = 0.5 * self.spacing
        return weights


@dataclass
class GridHamiltonian:
    """
    Finite-difference Hamiltonian with Dirichlet walls at both grid ends.

    Only interior points enter the matrix: the diagonal is
    hbar^2 / (m h^2) + V(x_j) and the off-diagonal -hbar^2 / (2 m h^2).
    ``potential`` is sampled on the full grid; its wall entries are ignored.
    """

    grid: Grid
    potential: np.ndarray
    units: UnitSystem = field(default_factory=UnitSystem)
    boundary: str = "dirichlet"

    def __post_init__(self):
        self.potential = np.asarray(self.potential, dtype=float)
        if self.potential.shape != (self.grid.n_points,):
            _exception_handler.raise_custom_exception(
                DomainError, "Potential must be sampled on every grid point."
            )
        if self.grid.n_points < 3:
            _exception_handler.raise_custom_exception(
                DomainError, "A Dirichlet grid needs at least one interior point."
            )
        if not np.all(np.isfinite(self.potential[1:-1])):
            _exception_handler.raise_custom_exception(
                DomainError, "Potential must be finite at interior points."
            )
        if self.boundary != "dirichlet":
            _exception_handler.raise_custom_exception(
                DomainError, f"Unsupported boundary '{self.boundary}'."
            )

    @classmethod
    def from_function(cls, grid: Grid, potential, units: Optional[UnitSystem] = None):
        """Samples ``potential`` at interior points; wall entries are set to zero."""
        values = np.zeros(grid.n_points)
        values[1:-1] = potential(grid.interior)
        return cls(grid, values, units or UnitSystem())

    @classmethod
    def for_system(cls, sys: "SystemSpec", grid: Grid) -> "GridHamiltonian":
        return cls.from_function(grid, sys.potential, sys.units)

    @property
    def kinetic_scale(self) -> float:
        return self.units.hbar ** 2 / (2.0 * self.units.mass * self.grid.spacing ** 2)

    @property
    def diagonal(self) -> np.ndarray:
        return 2.0 * self.kinetic_scale + self.potential[1:-1]

    @property
    def off_diagonal(self) -> np.ndarray:
        return np.full(self.grid.n_points - 3, -self.kinetic_scale)


class SliceKernel(str, Enum):
    FREE_IMAGE = "free-image"
    WELL_IMAGE_SUM = "well-image-sum"
    MEHLER_IMAGE = "mehler-image"


@dataclass(frozen=True)
class SliceConfig:
    """
    Time-slicing setup of the transfer-matrix composition.

    ``grid`` is the quadrature grid over the allowed region; when omitted a
    default covering the allowed region is built by the oracle.
    """

    n_slices: int
    per_slice_kernel: SliceKernel = SliceKernel.FREE_IMAGE
    potential_split: str = "trotter-midpoint"
    grid: Optional[Grid] = None

    def __post_init__(self):
        _exception_handler.validate_input(self.n_slices, (int, np.integer), "n_slices")
        if self.n_slices < 1:
            _exception_handler.raise_custom_exception(
                DomainError, f"n_slices must be >= 1, got {self.n_slices}."
            )
        if self.potential_split != "trotter-midpoint":
            _exception_handler.raise_custom_exception(
                DomainError, f"Unknown potential split '{self.potential_split}'."
            )


@dataclass(frozen=True)
class GreensQuery:
    """Pöschl-Teller Green's function request in natural_susy units."""

    s: float
    energy: float
    x_f: float
    x_i: float
    policy: SeriesPolicy = field(default_factory=SeriesPolicy)

    def __post_init__(self):
        if not self.s > -0.5:
            _exception_handler.raise_custom_exception(
                DomainError, f"s must be > -1/2, got {self.s}."
            )
        for name, value in (("x_f", self.x_f), ("x_i", self.x_i)):
            if not 0.0 < value < math.pi:
                _exception_handler.raise_custom_exception(
                    DomainError, f"{name} must lie in (0, pi), got {value}."
                )


class SuperpotentialKind(str, Enum):
    ROSEN_MORSE = "rosen-morse"
    OSCILLATOR_HALF_OMEGA = "oscillator-half-omega"


@dataclass(frozen=True)
class Superpotential:
    """
    W(x) = -b cot(x) on (0, pi) or W(x) = omega x / 2 on the real line,
    in natural_susy units.
    """

    kind: SuperpotentialKind
    b: Optional[float] = None
    omega: Optional[float] = None

    def __post_init__(self):
        if self.kind == SuperpotentialKind.ROSEN_MORSE:
            if self.b is None:
                _exception_handler.raise_custom_exception(
                    DomainError, "Rosen-Morse superpotential requires b."
                )
            validate_positive(self.b, "b")
        else:
            if self.omega is None:
                _exception_handler.raise_custom_exception(
                    DomainError, "Oscillator superpotential requires omega."
                )
            validate_positive(self.omega, "omega")

    @classmethod
    def rosen_morse(cls, b: float) -> "Superpotential":
        return cls(SuperpotentialKind.ROSEN_MORSE, b=b)

    @classmethod
    def oscillator_half_omega(cls, omega: float) -> "Superpotential":
        return cls(SuperpotentialKind.OSCILLATOR_HALF_OMEGA, omega=omega)

    @property
    def domain(self) -> Tuple[float, float]:
        if self.kind == SuperpotentialKind.ROSEN_MORSE:
            return 0.0, math.pi
        return -math.inf, math.inf


COMMANDS: tuple = ("kernel", "trace", "spectrum", "greens", "susy", "verify")
SYSTEMS: tuple = ("free", "half-line", "isw", "ho", "half-ho", "rosen-morse")
OUTPUT_FORMATS: tuple = ("json", "csv")
UNIT_CHOICES: tuple = ("auto", "standard", "natural-susy")


@dataclass
class RunRequest:
    """Parsed command-line request."""

    command: str
    system: Optional[str] = None
    width: Optional[float] = None
    omega: Optional[float] = None
    b: Optional[float] = None
    s: Optional[float] = None
    energy: Optional[float] = None
    real_tau: Optional[float] = None
    euclidean: bool = False
    beta: Optional[float] = None
    x_f: Optional[float] = None
    x_i: Optional[float] = None
    grid_points: Optional[int] = None
    x_max: Optional[float] = None
    rel_tol: float = numeric_constants.DEFAULT_REL_TOL
    max_terms: int = numeric_constants.DEFAULT_MAX_TERMS
    n_levels: int = 3
    output_format: str = "json"
    suite: str = verification_constants.SUITE_ALL
    units: str = "auto"

    def __post_init__(self):
        if self.command not in COMMANDS:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Unknown command '{self.command}'."
            )
        if self.system is not None and self.system not in SYSTEMS:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Unknown system '{self.system}'."
            )
        if self.output_format not in OUTPUT_FORMATS:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Unknown output format '{self.output_format}'."
            )
        if self.units not in UNIT_CHOICES:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Unknown unit system '{self.units}'."
            )
        if self.n_levels < 1:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"--n-levels must be >= 1, got {self.n_levels}."
            )

    def require(self, *names: str) -> None:
        """Raises InvalidRequestError naming the flags of missing parameters."""
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join(
                "--" + (name.replace("_", "") if name in ("x_f", "x_i") else name.replace("_", "-"))
                for name in missing
            )
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Command '{self.command}' requires {flags}."
            )

    @property
    def policy(self) -> SeriesPolicy:
        return SeriesPolicy(rel_tol=self.rel_tol, max_terms=self.max_terms)

    def to_dict(self) -> dict:
        return {key: value for key, value in self.__dict__.items()}


@dataclass
class VerificationPipelineConfigEntity:
    suite: str = verification_constants.SUITE_ALL
    pipeline_name: str = verification_constants.PIPELINE_NAME
    config_file_path: Path = verification_constants.CONFIG_FILE_PATH
    seed: int = field(
        default_factory=lambda: int(
            os.environ.get(env_constants.SEED_ENV_KEY, env_constants.DEFAULT_SEED)
        )
    )

    def __post_init__(self):
        allowed = verification_constants.SUITES + (verification_constants.SUITE_ALL,)
        if self.suite not in allowed:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, f"Unknown suite '{self.suite}'."
            )
        path = Path(self.config_file_path)
        self.settings: dict = read_yaml_to_dict(str(path)) if path.exists() else {}

    @property
    def suites(self) -> tuple:
        if self.suite == verification_constants.SUITE_ALL:
            return verification_constants.SUITES
        return (self.suite,)

    def section(self, name: str) -> dict:
        return dict(self.settings.get(name) or {})


@dataclass
class KernelVerificationConfigEntity:
    verification_pipeline_config: VerificationPipelineConfigEntity

    def __post_init__(self):
        settings = self.verification_pipeline_config.section(
            verification_constants.SUITE_KERNELS
        )
        self.seed: int = self.verification_pipeline_config.seed
        self.boundary_epsilon: float = float(settings.get(
            "boundary_epsilon", verification_constants.KERNEL_BOUNDARY_EPSILON
        ))
        self.boundary_tol: float = float(settings.get(
            "boundary_tol", verification_constants.KERNEL_BOUNDARY_TOL
        ))
        self.betas: tuple = tuple(settings.get("betas", verification_constants.KERNEL_BETAS))
        self.mehler_tol: float = float(settings.get(
            "mehler_tol", verification_constants.KERNEL_MEHLER_TOL
        ))
        self.mehler_terms: int = int(settings.get(
            "mehler_terms", verification_constants.KERNEL_MEHLER_TERMS
        ))
        self.composition_tol: float = float(settings.get(
            "composition_tol", verification_constants.KERNEL_COMPOSITION_TOL
        ))
        self.parity_tol: float = float(settings.get(
            "parity_tol", verification_constants.KERNEL_PARITY_TOL
        ))
        self.slice_order_min: float = float(settings.get(
            "slice_order_min", verification_constants.KERNEL_SLICE_ORDER_MIN
        ))


@dataclass
class SpectrumVerificationConfigEntity:
    verification_pipeline_config: VerificationPipelineConfigEntity

    def __post_init__(self):
        settings = self.verification_pipeline_config.section(
            verification_constants.SUITE_SPECTRA
        )
        self.grid_tol: float = float(settings.get(
            "grid_tol", verification_constants.SPECTRA_GRID_TOL
        ))
        self.ladder_tol: float = float(settings.get(
            "ladder_tol", verification_constants.SPECTRA_LADDER_TOL
        ))
        self.trace_tol: float = float(settings.get(
            "trace_tol", verification_constants.SPECTRA_TRACE_TOL
        ))


@dataclass
class GreensVerificationConfigEntity:
    verification_pipeline_config: VerificationPipelineConfigEntity

    def __post_init__(self):
        settings = self.verification_pipeline_config.section(
            verification_constants.SUITE_GREENS
        )
        self.seed: int = self.verification_pipeline_config.seed
        self.pole_tol: float = float(settings.get(
            "pole_tol", verification_constants.GREENS_POLE_TOL
        ))
        self.route_tol: float = float(settings.get(
            "route_tol", verification_constants.GREENS_ROUTE_TOL
        ))
        self.sample_count: int = int(settings.get(
            "sample_count", verification_constants.GREENS_SAMPLE_COUNT
        ))
        self.legendre_tol: float = float(settings.get(
            "legendre_tol", verification_constants.LEGENDRE_TOL
        ))


@dataclass
class SusyVerificationConfigEntity:
    verification_pipeline_config: VerificationPipelineConfigEntity

    def __post_init__(self):
        settings = self.verification_pipeline_config.section(
            verification_constants.SUITE_SUSY
        )
        self.potential_tol: float = float(settings.get(
            "potential_tol", verification_constants.SUSY_POTENTIAL_TOL
        ))
        self.spectrum_tol: float = float(settings.get(
            "spectrum_tol", verification_constants.SUSY_SPECTRUM_TOL
        ))
        self.grid_points: int = int(settings.get(
            "grid_points", verification_constants.SUSY_GRID_POINTS
        ))
        self.residual_tol: float = float(settings.get(
            "residual_tol", verification_constants.SUSY_RESIDUAL_TOL
        ))
        self.residual_order_min: float = float(settings.get(
            "residual_order_min", verification_constants.SUSY_RESIDUAL_ORDER_MIN
        ))
        self.limit_tol: float = float(settings.get(
            "limit_tol", verification_constants.SUSY_LIMIT_TOL
        ))
        self.b_values: tuple = tuple(
            float(b) for b in settings.get("b_values", verification_constants.SUSY_B_VALUES)
        )
        self.seed: int = self.verification_pipeline_config.seed
