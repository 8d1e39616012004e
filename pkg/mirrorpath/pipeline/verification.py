from typing import Callable, Dict, List, Optional

from mirrorpath.components.greens_verification import GreensVerification
from mirrorpath.components.kernel_verification import KernelVerification
from mirrorpath.components.spectrum_verification import SpectrumVerification
from mirrorpath.components.susy_verification import SusyVerification
from mirrorpath.constants.pipeline.verification import (
    SUITE_ALL,
    SUITE_GREENS,
    SUITE_KERNELS,
    SUITE_SPECTRA,
    SUITE_SUSY,
    VERIFICATION_PIPELINE_LOGGER,
)
from mirrorpath.datamodels.artifact import (
    SuiteReportArtifactEntity,
    VerificationReportArtifactEntity,
)
from mirrorpath.datamodels.config import (
    GreensVerificationConfigEntity,
    KernelVerificationConfigEntity,
    SpectrumVerificationConfigEntity,
    SusyVerificationConfigEntity,
    VerificationPipelineConfigEntity,
)

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


class VerificationPipeline:
    """Runs the cross-oracle verification suites and collects their reports."""

    def __init__(
        self,
        suite: str = SUITE_ALL,
        verification_pipeline_config: Optional[VerificationPipelineConfigEntity] = None
    ) -> None:
        self._exception_handler = AdvancedExceptionHandler()
        self.logger = AdvancedLogger(name=VERIFICATION_PIPELINE_LOGGER)

        verification_pipeline_config = (
            verification_pipeline_config or VerificationPipelineConfigEntity(suite=suite)
        )
        self.kernel_verification_config = KernelVerificationConfigEntity(
            verification_pipeline_config=verification_pipeline_config
        )
        self.spectrum_verification_config = SpectrumVerificationConfigEntity(
            verification_pipeline_config=verification_pipeline_config
        )
        self.greens_verification_config = GreensVerificationConfigEntity(
            verification_pipeline_config=verification_pipeline_config
        )
        self.susy_verification_config = SusyVerificationConfigEntity(
            verification_pipeline_config=verification_pipeline_config
        )
        self.verification_pipeline_config = verification_pipeline_config

    def start_kernel_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting kernel suite.")
            report = KernelVerification(self.kernel_verification_config).initiate_kernel_verification()
            self.logger.info("Kernel suite finished: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during kernel suite.")
            self._exception_handler.handle_exception(exc)
            raise

    def start_spectrum_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting spectra suite.")
            report = SpectrumVerification(
                self.spectrum_verification_config
            ).initiate_spectrum_verification()
            self.logger.info("Spectra suite finished: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during spectra suite.")
            self._exception_handler.handle_exception(exc)
            raise

    def start_greens_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting Green's function suite.")
            report = GreensVerification(self.greens_verification_config).initiate_greens_verification()
            self.logger.info("Green's function suite finished: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during Green's function suite.")
            self._exception_handler.handle_exception(exc)
            raise

    def start_susy_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting SUSY suite.")
            report = SusyVerification(self.susy_verification_config).initiate_susy_verification()
            self.logger.info("SUSY suite finished: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during SUSY suite.")
            self._exception_handler.handle_exception(exc)
            raise

    def run_pipeline(self) -> VerificationReportArtifactEntity:
        try:
            self.logger.info("Running the verification pipeline.")
            stages: Dict[str, Callable[[], SuiteReportArtifactEntity]] = {
                SUITE_KERNELS: self.start_kernel_verification,
                SUITE_SPECTRA: self.start_spectrum_verification,
                SUITE_GREENS: self.start_greens_verification,
                SUITE_SUSY: self.start_susy_verification,
            }
            reports: List[SuiteReportArtifactEntity] = [
                stages[suite]() for suite in self.verification_pipeline_config.suites
            ]
            report = VerificationReportArtifactEntity(
                seed=self.verification_pipeline_config.seed, suites=reports
            )
            if report.passed:
                self.logger.info("Verification pipeline passed.")
            else:
                self.logger.warning("Verification pipeline has failed checks.")
            return report
        except Exception as exc:
            self.logger.error("Error during the verification pipeline.")
            self._exception_handler.handle_exception(exc)
            raise
