from pathlib import Path


VERIFICATION_PIPELINE_LOGGER: str = "VerificationPipelineLogger"
PIPELINE_NAME: str = "mirrorpath"

CONFIG_FILE_PATH: Path = (
    Path(__file__).resolve().parents[3] / "config" / "verification.yaml"
)

SUITE_KERNELS: str = "kernels"
SUITE_SPECTRA: str = "spectra"
SUITE_GREENS: str = "greens"
SUITE_SUSY: str = "susy"
SUITE_ALL: str = "all"
SUITES: tuple = (SUITE_KERNELS, SUITE_SPECTRA, SUITE_GREENS, SUITE_SUSY)

# Kernel suite
KERNEL_BOUNDARY_EPSILON: float = 1e-6
KERNEL_BOUNDARY_TOL: float = 1e-5
KERNEL_BETAS: tuple = (0.1, 1.0, 5.0)
KERNEL_MEHLER_TOL: float = 1e-9
KERNEL_MEHLER_TERMS: int = 60
KERNEL_COMPOSITION_TOL: float = 1e-6
KERNEL_PARITY_TOL: float = 1e-13
KERNEL_SLICE_ORDER_MIN: float = 1.8

# Spectra suite
SPECTRA_GRID_TOL: float = 1e-4
SPECTRA_LADDER_TOL: float = 5e-2
SPECTRA_TRACE_TOL: float = 1e-4

# Greens suite
GREENS_POLE_TOL: float = 1e-6
GREENS_ROUTE_TOL: float = 1e-9
GREENS_SAMPLE_COUNT: int = 20
LEGENDRE_TOL: float = 1e-8

# Susy suite
SUSY_POTENTIAL_TOL: float = 1e-12
SUSY_SPECTRUM_TOL: float = 1e-3
SUSY_GRID_POINTS: int = 4000
SUSY_RESIDUAL_TOL: float = 1e-8
SUSY_RESIDUAL_ORDER_MIN: float = 1.8
SUSY_LIMIT_TOL: float = 1e-9
SUSY_B_VALUES: tuple = (1.0, 1.5, 2.0)
