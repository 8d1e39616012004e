import math

import numpy as np

from mirrorpath.components.checks import run_check
from mirrorpath.constants.pipeline.verification import SUITE_KERNELS
from mirrorpath.datamodels.artifact import SuiteReportArtifactEntity
from mirrorpath.datamodels.config import (
    KernelVerificationConfigEntity,
    SliceConfig,
    SliceKernel,
    SystemSpec,
    TimeArgument,
    UnitSystem,
)
from mirrorpath.physics.kernels import (
    half_line_kernel,
    image_kernel,
    kernel,
    oscillator_kernel,
)
from mirrorpath.physics.oracle import composition_residual, convergence_order, sliced_kernel
from mirrorpath.physics.spectral import parity_filtered_terms, spectral_kernel

from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.logger import AdvancedLogger


class KernelVerification:
    """Boundary law, Mehler sum, composition, parity and slicing checks of the kernels."""

    def __init__(self, kernel_verification_config: KernelVerificationConfigEntity) -> None:
        self._exception_handler = AdvancedExceptionHandler()
        self.logger = AdvancedLogger(name=KernelVerification.__name__)
        self.kernel_verification_config = kernel_verification_config
        self.units = UnitSystem()

    def initiate_kernel_verification(self) -> SuiteReportArtifactEntity:
        try:
            self.logger.info("Starting kernel verification.")
            cfg = self.kernel_verification_config
            checks = [
                run_check("half_line_boundary_law", cfg.boundary_tol, self._boundary_law, self.logger),
                run_check("mehler_vs_hermite", cfg.mehler_tol, self._mehler_vs_hermite, self.logger),
                run_check(
                    "composition_half_line", cfg.composition_tol,
                    lambda: self._composition(SystemSpec.half_line(self.units)), self.logger
                ),
                run_check(
                    "composition_half_oscillator", cfg.composition_tol,
                    lambda: self._composition(SystemSpec.half_oscillator(1.0, self.units)), self.logger
                ),
                run_check(
                    "composition_infinite_well", cfg.composition_tol,
                    lambda: self._composition(SystemSpec.infinite_well(math.pi, self.units)), self.logger
                ),
                run_check("parity_cancellation", cfg.parity_tol, self._parity_cancellation, self.logger),
                run_check("image_antisymmetry", cfg.parity_tol, self._image_antisymmetry, self.logger),
                run_check(
                    "slicing_order_half_oscillator", cfg.slice_order_min,
                    self._slicing_order, self.logger, at_least=True
                ),
                run_check(
                    "slicing_half_line_invariance", cfg.composition_tol,
                    self._half_line_slicing, self.logger
                ),
            ]
            report = SuiteReportArtifactEntity(SUITE_KERNELS, checks)
            self.logger.info("Kernel verification completed: passed=%s", report.passed)
            return report
        except Exception as exc:
            self.logger.error("Error during kernel verification.")
            self._exception_handler.handle_exception(exc)
            raise

    def _boundary_law(self) -> float:
        """max |K(eps, x_i, beta)| relative to the free kernel scale sqrt(m / 2 pi hbar beta)."""
        epsilon = self.kernel_verification_config.boundary_epsilon
        worst = 0.0
        for beta in self.kernel_verification_config.betas:
            scale = math.sqrt(self.units.mass / (2.0 * math.pi * self.units.hbar * beta))
            for x_i in np.linspace(0.2, 5.0, 25):
                value = half_line_kernel(epsilon, float(x_i), TimeArgument.euclidean(beta), self.units)
                worst = max(worst, abs(value) / scale)
        return worst

    def _mehler_vs_hermite(self) -> float:
        rng = np.random.default_rng(self.kernel_verification_config.seed)
        pairs = rng.uniform(-2.0, 2.0, size=(25, 2))
        t = TimeArgument.euclidean(1.0)
        sys = SystemSpec.oscillator(1.0, self.units)
        worst = 0.0
        for x_f, x_i in pairs:
            closed = oscillator_kernel(float(x_f), float(x_i), t, 1.0, self.units)
            series = spectral_kernel(
                sys, float(x_f), float(x_i), t, self.kernel_verification_config.mehler_terms
            )
            worst = max(worst, abs(closed.re - series.re))
        return worst

    def _composition(self, sys: SystemSpec) -> float:
        worst = 0.0
        for x_f, x_i in ((0.7, 1.3), (1.9, 0.4), (2.5, 2.2)):
            worst = max(worst, composition_residual(sys, x_f, x_i, 0.4, 0.6))
        return worst

    def _parity_cancellation(self) -> float:
        image_subtracted, odd_only = parity_filtered_terms(40, 0.7, 1.1, 1.0, 1.0, self.units)
        return float(np.max(np.abs(image_subtracted - odd_only)))

    def _image_antisymmetry(self) -> float:
        worst = 0.0
        for t in (TimeArgument.euclidean(0.5), TimeArgument.real(0.8)):
            for x_f, x_i in ((0.3, 1.2), (1.5, -0.4), (-2.0, 0.9)):
                forward = image_kernel(x_f, x_i, t, self.units).value
                mirrored = image_kernel(x_f, -x_i, t, self.units).value
                worst = max(worst, abs(forward + mirrored))
        return worst

    def _slicing_order(self) -> float:
        sys = SystemSpec.half_oscillator(1.0, self.units)
        exact = kernel(sys, 0.8, 1.2, TimeArgument.euclidean(1.0)).re
        n_values = (4, 8, 16, 32)
        errors = [
            abs(sliced_kernel(sys, SliceConfig(n, SliceKernel.FREE_IMAGE), 0.8, 1.2, 1.0).re - exact)
            for n in n_values
        ]
        self.logger.debug("Half-oscillator slicing errors: %s", errors)
        return convergence_order(errors, n_values)

    def _half_line_slicing(self) -> float:
        sys = SystemSpec.half_line(self.units)
        exact = kernel(sys, 0.8, 1.2, TimeArgument.euclidean(1.0)).re
        return max(
            abs(sliced_kernel(sys, SliceConfig(n), 0.8, 1.2, 1.0).re - exact)
            for n in (1, 4, 16)
        )
