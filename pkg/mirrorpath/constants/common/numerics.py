# Series
DEFAULT_REL_TOL: float = 1e-12
DEFAULT_MAX_TERMS: int = 100_000

# Special functions
LANCZOS_G: float = 7.0
LANCZOS_COEFFICIENTS: tuple = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
LEGENDRE_ROUTE_TOL: float = 1e-8
LADDER_CHECK_DEGREES: int = 8

# Kernels
NATURAL_SUSY_HBAR: float = 1.0
NATURAL_SUSY_MASS: float = 0.5
KERNEL_SCALE_FLOOR: float = 1e-12

# Spectral
MAX_OSCILLATOR_INDEX: int = 200
POLE_GUARD: float = 1e-9
RESIDUE_STEPS: tuple = (1e-2, 5e-3, 2.5e-3, 1.25e-3)
POLE_ROOT_TOL: float = 1e-6

# Supersymmetry
POTENTIAL_IDENTITY_TOL: float = 1e-12

# Grid oracle
HALF_SPACE_EXTENT_FACTOR: float = 12.0
TRACE_GAUSSIAN_EXPONENT: float = 45.0
TRACE_GRID_POINTS: int = 4001
TAIL_WARNING_RATIO: float = 1e-9

# Trace extraction
PENCIL_RANK_TOL: float = 1e-9
MIN_GAP_RESOLUTION: float = 0.01
ASYMPTOTIC_TOL: float = 1e-2
PEEL_AGREEMENT_TOL: float = 2e-2
AITKEN_MAX_RATIO: float = 0.8
SLICE_GRID_POINTS: int = 1201
COMPOSITION_GRID_POINTS: int = 4001
