import math
from typing import List

import numpy as np

from mirrorpath.components.checks import run_check
from mirrorpath.constants.pipeline.verification import SUITE_SUSY
from mirrorpath.datamodels.artifact import CheckResultArtifactEntity, SuiteReportArtifactEntity
from mirrorpath.datamodels.config import (
    Grid,
    GridHamiltonian,
    Superpotential,
    SusyVerificationConfigEntity,
    UnitSystem,
)
from mirrorpath.physics.oracle import grid_eigensolve
from mirrorpath.physics.susy import (
    annihilation_residual,
    ground_state_residual,
    isw_limit_check,
    partner_potentials,
    rosen_morse_spectrum,
)

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


RESIDUAL_GRID = (0.1, math.pi - 0.1)
SPECTRUM_LEVELS: int = 4


class SusyVerification:
    """Rosen-Morse partner potentials: the b = 1 well limit, ground-state residuals and grid spectra."""

    def __init__(self, susy_verification_config: SusyVerificationConfigEntity) -> None:
        self._exception_handler = AdvancedExceptionHandler()
        self.logger = AdvancedLogger(name=SusyVerification.__name__)
        self.susy_verification_config = susy_verification_config

    def initiate_susy_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting SUSY verification.")
            cfg = self.susy_verification_config
            checks = self._limit_checks()
            for b in cfg.b_values:
                checks.append(run_check(
                    f"annihilation_order_b{b:g}", cfg.residual_order_min,
                    lambda b=b: self._annihilation_order(b), self.logger, at_least=True
                ))
                checks.append(run_check(
                    f"rosen_morse_grid_spectrum_b{b:g}", cfg.spectrum_tol,
                    lambda b=b: self._grid_spectrum(b), self.logger
                ))
            for b in (value for value in cfg.b_values if float(value).is_integer()):
                checks.append(run_check(
                    f"ground_state_residual_b{b:g}", cfg.residual_tol,
                    lambda b=b: ground_state_residual(
                        Superpotential.rosen_morse(b), Grid(*RESIDUAL_GRID, 2001)
                    ),
                    self.logger
                ))
            checks.append(run_check(
                "oscillator_ground_state_residual", cfg.residual_tol,
                lambda: ground_state_residual(
                    Superpotential.oscillator_half_omega(1.0), Grid(-8.0, 8.0, 2001)
                ),
                self.logger
            ))
            report = SuiteReportArtifactEntity(SUITE_SUSY, checks)
            self.logger.info("SUSY verification completed: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during SUSY verification.")
            self._exception_handler.handle_exception(exc)
            raise

    def _limit_checks(self) -> List[CheckResultArtifactEntity]:
        cfg = self.susy_verification_config
        try:
            report = isw_limit_check(
                Grid(0.0, math.pi, cfg.grid_points), SPECTRUM_LEVELS,
                tol=cfg.limit_tol, potential_tol=cfg.potential_tol, seed=cfg.seed
            )
        except Exception as exc:
            self._exception_handler.handle_exception(exc, "Infinite well limit check raised.")
            return [CheckResultArtifactEntity("isw_limit", False, math.nan, cfg.limit_tol, str(exc))]
        return [
            CheckResultArtifactEntity(
                f"isw_limit_{check.name}", check.passed, check.observed, check.tolerance, check.message
            )
            for check in report.checks
        ]

    def _annihilation_order(self, b: float) -> float:
        """Observed order of the A- psi_0 residual when the spacing is halved."""
        w = Superpotential.rosen_morse(b)
        coarse = annihilation_residual(w, Grid(*RESIDUAL_GRID, 501))
        fine = annihilation_residual(w, Grid(*RESIDUAL_GRID, 1001))
        return math.log2(coarse / fine)

    def _grid_spectrum(self, b: float) -> float:
        w = Superpotential.rosen_morse(b)
        grid = Grid(0.0, math.pi, self.susy_verification_config.grid_points)
        h = GridHamiltonian.from_function(
            grid, lambda x: partner_potentials(w, x).v_minus, UnitSystem.natural_susy()
        )
        energies = grid_eigensolve(h, SPECTRUM_LEVELS).energies
        return float(np.max(np.abs(energies - rosen_morse_spectrum(b, SPECTRUM_LEVELS).energies)))
