import math

import numpy as np

from mirrorpath.components.checks import run_check
from mirrorpath.constants.pipeline.verification import SUITE_SPECTRA
from mirrorpath.datamodels.artifact import SuiteReportArtifactEntity, TraceCurve
from mirrorpath.datamodels.config import (
    Grid,
    GridHamiltonian,
    SpectrumVerificationConfigEntity,
    SystemSpec,
    UnitSystem,
)
from mirrorpath.physics.kernels import boltzmann_sum
from mirrorpath.physics.oracle import grid_eigensolve
from mirrorpath.physics.spectral import level_energies
from mirrorpath.physics.trace import (
    extract_excited_energies,
    extract_ground_energy,
    kernel_trace,
    trace_curve,
)

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


ISW_TRACE_AT_HALF: float = 0.753313
LADDER_BETAS: np.ndarray = 0.5 * np.arange(1, 9)


class SpectrumVerification:
    """Grid eigenvalues, traces and trace-based level extraction against exact spectra."""

    def __init__(self, spectrum_verification_config: SpectrumVerificationConfigEntity) -> None:
        self._exception_handler = AdvancedExceptionHandler()
        self.logger = AdvancedLogger(name=SpectrumVerification.__name__)
        self.spectrum_verification_config = spectrum_verification_config
        self.half_oscillator = SystemSpec.half_oscillator(1.0)
        self.well = SystemSpec.infinite_well(math.pi, UnitSystem.natural_susy())

    def initiate_spectrum_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting spectrum verification.")
            cfg = self.spectrum_verification_config
            checks = [
                run_check("half_oscillator_grid", cfg.grid_tol, self._half_oscillator_grid, self.logger),
                run_check("infinite_well_grid", cfg.grid_tol, self._well_grid, self.logger),
                run_check("infinite_well_trace", cfg.trace_tol, self._well_trace, self.logger),
                run_check("trace_vs_boltzmann", cfg.trace_tol, self._trace_vs_boltzmann, self.logger),
                run_check(
                    "half_oscillator_ladder", cfg.ladder_tol,
                    lambda: self._ladder(self.half_oscillator), self.logger
                ),
                run_check(
                    "infinite_well_ladder", cfg.ladder_tol,
                    lambda: self._ladder(self.well), self.logger
                ),
                run_check("infinite_well_ground_energy", 2e-3, self._well_ground_energy, self.logger),
                run_check("peeled_first_excited", cfg.ladder_tol, self._peeled_first_excited, self.logger),
            ]
            report = SuiteReportArtifactEntity(SUITE_SPECTRA, checks)
            self.logger.info("Spectrum verification completed: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during spectrum verification.")
            self._exception_handler.handle_exception(exc)
            raise

    def _grid_gap(self, sys: SystemSpec, grid: Grid, n_levels: int) -> float:
        spectrum = grid_eigensolve(GridHamiltonian.for_system(sys, grid), n_levels)
        return float(np.max(np.abs(spectrum.energies - level_energies(sys, n_levels))))

    def _half_oscillator_grid(self) -> float:
        return self._grid_gap(self.half_oscillator, Grid(0.0, 12.0, 4001), 3)

    def _well_grid(self) -> float:
        return self._grid_gap(self.well, Grid(0.0, math.pi, 2001), 3)

    def _well_trace(self) -> float:
        return abs(kernel_trace(self.well, 0.5) - ISW_TRACE_AT_HALF)

    def _trace_vs_boltzmann(self) -> float:
        worst = 0.0
        for sys in (self.half_oscillator, self.well, SystemSpec.oscillator(1.0)):
            for beta in (0.3, 1.0, 3.0):
                exact = boltzmann_sum(level_energies(sys, 200), beta, sys.units.hbar)
                worst = max(worst, abs(kernel_trace(sys, beta) / exact - 1.0))
        return worst

    def _ladder(self, sys: SystemSpec) -> float:
        spectrum = extract_excited_energies(trace_curve(sys, LADDER_BETAS), 2)
        return float(np.max(np.abs(spectrum.energies - level_energies(sys, 2))))

    def _well_ground_energy(self) -> float:
        estimate = extract_ground_energy(trace_curve(self.well, (3.0, 4.0, 5.0)))
        return abs(estimate.value - 1.0)

    def _peeled_first_excited(self) -> float:
        """E_1 from the half-oscillator curve with the exact ground term removed."""
        betas = np.array([1.5, 2.0, 2.5])
        ground = level_energies(self.half_oscillator, 1)[0]
        values = trace_curve(self.half_oscillator, betas).values - np.exp(-ground * betas)
        estimate = extract_ground_energy(TraceCurve(betas, values, "half-ho minus ground"))
        return abs(estimate.value - level_energies(self.half_oscillator, 2)[1])
