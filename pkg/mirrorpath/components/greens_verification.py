import math

import numpy as np

from mirrorpath.components.checks import run_check
from mirrorpath.constants.pipeline.verification import SUITE_GREENS
from mirrorpath.datamodels.artifact import SuiteReportArtifactEntity
from mirrorpath.datamodels.config import (
    GreensQuery,
    GreensVerificationConfigEntity,
    SeriesPolicy,
)
from mirrorpath.physics.specfun import ferrers_half_closed_form, ferrers_half_series
from mirrorpath.physics.spectral import (
    ferrers_legendre,
    greens_residue,
    isw_eigenstate,
    isw_greens,
    legendre_degree_ladder,
    locate_greens_poles,
    poschl_teller_greens,
)
from mirrorpath.physics.susy import sample_greens_triples

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


POLE_PROBE: tuple = (1.0, 1.3)
LEGENDRE_ANGLES: tuple = (0.3, 1.0, 2.0, 2.8)
LEGENDRE_MAX_DEGREE: int = 10


class GreensVerification:
    """Poles, residues and series routes of the Pöschl-Teller and infinite-well Green's functions."""

    def __init__(self, greens_verification_config: GreensVerificationConfigEntity) -> None:
        self._exception_handler = AdvancedExceptionHandler()
        self.logger = AdvancedLogger(name=GreensVerification.__name__)
        self.greens_verification_config = greens_verification_config

    def initiate_greens_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting Green's function verification.")
            cfg = self.greens_verification_config
            checks = [
                run_check("infinite_well_poles", cfg.pole_tol, self._poles, self.logger),
                run_check("infinite_well_residues", cfg.pole_tol, self._residues, self.logger),
                run_check("poschl_teller_reduction", cfg.route_tol, self._reduction, self.logger),
                run_check("legendre_half_routes", cfg.legendre_tol, self._legendre_routes, self.logger),
                run_check("legendre_degree_ladder", cfg.legendre_tol, self._degree_ladder, self.logger),
            ]
            report = SuiteReportArtifactEntity(SUITE_GREENS, checks)
            self.logger.info("Green's function verification completed: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during Green's function verification.")
            self._exception_handler.handle_exception(exc)
            raise

    def _poles(self) -> float:
        poles = locate_greens_poles(*POLE_PROBE, 0.5, 10.0)
        expected = np.array([1.0, 4.0, 9.0])
        if poles.size != expected.size:
            self.logger.warning("Expected poles %s, located %s", expected, poles)
            return math.inf
        return float(np.max(np.abs(poles - expected)))

    def _residues(self) -> float:
        x_f, x_i = POLE_PROBE
        worst = 0.0
        for n in range(3):
            exact = isw_eigenstate(n, x_f) * isw_eigenstate(n, x_i)
            worst = max(worst, abs(greens_residue(x_f, x_i, n) - exact))
        return worst

    def _reduction(self) -> float:
        cfg = self.greens_verification_config
        policy = SeriesPolicy(rel_tol=1e-11)
        worst = 0.0
        for x_f, x_i, energy in sample_greens_triples(1.0, cfg.sample_count, cfg.seed):
            general = poschl_teller_greens(GreensQuery(0.5, energy, x_f, x_i, policy))
            worst = max(worst, abs(general - isw_greens(x_f, x_i, energy, policy)))
        return worst

    def _legendre_routes(self) -> float:
        worst = 0.0
        for theta in LEGENDRE_ANGLES:
            for n in range(LEGENDRE_MAX_DEGREE + 1):
                closed = ferrers_half_closed_form(n, theta)
                worst = max(worst, abs(closed - ferrers_half_series(n, theta)))
        return worst

    def _degree_ladder(self) -> float:
        """Recurrence ladder against the hypergeometric route at s = 1.3."""
        ladder = legendre_degree_ladder(1.3, LEGENDRE_MAX_DEGREE, np.array(LEGENDRE_ANGLES))
        worst = 0.0
        for n in range(LEGENDRE_MAX_DEGREE + 1):
            for j, theta in enumerate(LEGENDRE_ANGLES):
                series = ferrers_legendre(1.3, n, theta)
                worst = max(worst, abs(ladder[n, j] - series) / max(1.0, abs(series)))
        return worst
