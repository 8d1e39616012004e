"""
Command-line front end.

Every command prints one report to stdout: a JSON object with ``request``,
``result`` and ``diagnostics``, or long-format CSV rows with ``--format csv``.
Exit status is 2 for an invalid request, 1 for a failed verification and 0
otherwise. Logs go to stderr.
"""
import argparse
import math
import os
import re
import sys
from typing import List, Optional, Tuple

import numpy as np

from mirrorpath.constants.common.env import DEFAULT_SEED, SEED_ENV_KEY
from mirrorpath.constants.common.numerics import (
    DEFAULT_MAX_TERMS,
    DEFAULT_REL_TOL,
    HALF_SPACE_EXTENT_FACTOR,
    TRACE_GRID_POINTS,
)
from mirrorpath.constants.pipeline.verification import SUITE_ALL, SUITES, SUSY_GRID_POINTS
from mirrorpath.datamodels.config import (
    COMMANDS,
    OUTPUT_FORMATS,
    SYSTEMS,
    UNIT_CHOICES,
    GreensQuery,
    Grid,
    GridHamiltonian,
    RunRequest,
    Superpotential,
    SystemKind,
    SystemSpec,
    TimeArgument,
    UnitSystem,
)
from mirrorpath.physics.kernels import boltzmann_sum, kernel
from mirrorpath.physics.oracle import grid_eigensolve
from mirrorpath.physics.spectral import isw_greens, level_energies, poschl_teller_greens
from mirrorpath.physics.susy import (
    ground_state_residual,
    isw_limit_check,
    partner_potentials,
    rosen_morse_spectrum,
)
from mirrorpath.physics.trace import default_trace_grid, kernel_trace
from mirrorpath.pipeline.verification import VerificationPipeline

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    InvalidRequestError,
    MirrorPathError,
)
from QMUtils.io import dump_csv_report, dump_json_report
from QMUtils.logger import AdvancedLogger


_exception_handler = AdvancedExceptionHandler()
_logger = AdvancedLogger(name="cli")

EXIT_OK: int = 0
EXIT_FAILED_VERIFICATION: int = 1
EXIT_INVALID_REQUEST: int = 2

SPECTRUM_GRID_POINTS: int = 2001

_PI_PATTERN = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


class CommandOutput:
    """Result of one command before serialization."""

    def __init__(
        self,
        result: dict,
        diagnostics: dict,
        columns: List[str],
        rows: List[dict],
        passed: bool = True
    ) -> None:
        self.result = result
        self.diagnostics = diagnostics
        self.columns = columns
        self.rows = rows
        self.passed = passed


def parse_real(text: str) -> float:
    """Float parser that also accepts multiples and fractions of pi, e.g. ``pi``, ``2pi``, ``pi/2``."""
    try:
        return float(text)
    except ValueError:
        pass
    match = _PI_PATTERN.match(text.strip().lower())
    if not match:
        raise argparse.ArgumentTypeError(f"not a real number: '{text}'")
    coefficient = match.group(1)
    value = math.pi * (float(coefficient) if coefficient not in ("", "+", "-") else 1.0)
    if coefficient == "-":
        value = -value
    if match.group(2):
        value /= float(match.group(2))
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorpath",
        description="Propagators, traces, Green's functions and SUSY checks for walled 1-d systems.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--system", choices=SYSTEMS)
    parser.add_argument("--width", type=parse_real)
    parser.add_argument("--omega", type=parse_real)
    parser.add_argument("--b", type=parse_real)
    parser.add_argument("--s", type=parse_real)
    parser.add_argument("--energy", type=parse_real)
    parser.add_argument("--real-tau", dest="real_tau", type=parse_real)
    parser.add_argument("--euclidean", action="store_true")
    parser.add_argument("--beta", type=parse_real)
    parser.add_argument("--xf", dest="x_f", type=parse_real)
    parser.add_argument("--xi", dest="x_i", type=parse_real)
    parser.add_argument("--grid-points", dest="grid_points", type=int)
    parser.add_argument("--x-max", dest="x_max", type=parse_real)
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, default=DEFAULT_REL_TOL)
    parser.add_argument("--max-terms", dest="max_terms", type=int, default=DEFAULT_MAX_TERMS)
    parser.add_argument("--n-levels", dest="n_levels", type=int, default=3)
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--suite", choices=SUITES + (SUITE_ALL,), default=SUITE_ALL)
    parser.add_argument(
        "--units", choices=UNIT_CHOICES, default="auto",
        help="auto uses hbar = 2m = 1 for isw and rosen-morse, hbar = m = 1 otherwise",
    )
    return parser


def build_request(argv: Optional[List[str]] = None) -> RunRequest:
    """Parses command-line arguments. argparse exits with status 2 on malformed flags."""
    args = _build_parser().parse_args(argv)
    return RunRequest(**vars(args))


def _units(request: RunRequest) -> UnitSystem:
    if request.units == "natural-susy":
        return UnitSystem.natural_susy()
    if request.units == "auto" and request.system in ("isw", "rosen-morse"):
        return UnitSystem.natural_susy()
    return UnitSystem()


def _system(request: RunRequest) -> SystemSpec:
    request.require("system")
    if request.system == "rosen-morse":
        _exception_handler.raise_custom_exception(
            InvalidRequestError, f"Command '{request.command}' does not accept --system rosen-morse."
        )
    kind = SystemKind(request.system)
    if kind == SystemKind.INFINITE_WELL:
        request.require("width")
    if kind in (SystemKind.OSCILLATOR, SystemKind.HALF_OSCILLATOR):
        request.require("omega")
    return SystemSpec(kind, _units(request), width=request.width, omega=request.omega)


def _time(request: RunRequest) -> TimeArgument:
    if request.real_tau is not None:
        if request.euclidean or request.beta is not None:
            _exception_handler.raise_custom_exception(
                InvalidRequestError, "Use either --real-tau or --euclidean --beta, not both."
            )
        return TimeArgument.real(request.real_tau)
    if not request.euclidean and request.beta is None:
        _exception_handler.raise_custom_exception(
            InvalidRequestError, "A time is required: --real-tau or --euclidean --beta."
        )
    request.require("beta")
    return TimeArgument.euclidean(request.beta)


def _sweep_positions(sys: SystemSpec, request: RunRequest, scale_time: float) -> np.ndarray:
    """``grid_points`` open-interval positions across the allowed region."""
    lower, upper = sys.allowed_region
    extent = request.x_max or HALF_SPACE_EXTENT_FACTOR * sys.length_scale(scale_time)
    if math.isinf(upper):
        upper = extent
    if math.isinf(lower):
        lower = -extent
    return Grid(lower, upper, request.grid_points + 2).interior


def _units_dict(units: UnitSystem) -> dict:
    return {"hbar": units.hbar, "mass": units.mass}


def _run_kernel(request: RunRequest) -> CommandOutput:
    sys = _system(request)
    t = _time(request)
    request.require("x_i")
    if request.grid_points is None:
        request.require("x_f")
        positions = np.array([request.x_f])
    else:
        positions = _sweep_positions(sys, request, abs(t.value))

    values = [kernel(sys, float(x_f), request.x_i, t, request.policy) for x_f in positions]
    diagnostics = {
        "time_kind": t.kind.value,
        "units": _units_dict(sys.units),
        "rel_tol": request.rel_tol,
        "max_terms": request.max_terms,
    }
    if t.is_euclidean:
        columns = ["x_f", "x_i", "beta", "value"]
        rows = [
            {"x_f": x_f, "x_i": request.x_i, "beta": t.value, "value": value.re}
            for x_f, value in zip(positions, values)
        ]
        samples = [value.re for value in values]
    else:
        columns = ["x_f", "x_i", "tau", "re", "im"]
        rows = [
            {"x_f": x_f, "x_i": request.x_i, "tau": t.value, "re": value.re, "im": value.im}
            for x_f, value in zip(positions, values)
        ]
        samples = [value.value for value in values]

    if request.grid_points is None:
        result = {"value": samples[0]}
    else:
        result = {"x_f": positions, "values": samples}
        diagnostics["sweep_points"] = request.grid_points
    return CommandOutput(result, diagnostics, columns, rows)


def _run_trace(request: RunRequest) -> CommandOutput:
    sys = _system(request)
    request.require("beta")
    grid = default_trace_grid(sys, request.beta, request.grid_points or TRACE_GRID_POINTS)
    if request.x_max is not None:
        grid = Grid(grid.x_min, request.x_max, grid.n_points)
    value = kernel_trace(sys, request.beta, grid, request.policy)
    reference = boltzmann_sum(level_energies(sys, 200), request.beta, sys.units.hbar)
    diagnostics = {
        "quadrature": {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points},
        "boltzmann_sum_200_levels": reference,
        "units": _units_dict(sys.units),
    }
    rows = [{"beta": request.beta, "value": value}]
    return CommandOutput({"value": value}, diagnostics, ["beta", "value"], rows)


def _spectrum_grid(sys: SystemSpec, request: RunRequest) -> Grid:
    n_points = request.grid_points or SPECTRUM_GRID_POINTS
    lower, upper = sys.allowed_region
    extent = request.x_max or HALF_SPACE_EXTENT_FACTOR * sys.length_scale(1.0)
    if math.isinf(upper):
        upper = extent
    if math.isinf(lower):
        lower = -extent
    return Grid(lower, upper, n_points)


def _run_spectrum(request: RunRequest) -> CommandOutput:
    if request.system == "rosen-morse":
        request.require("b")
        w = Superpotential.rosen_morse(request.b)
        grid = Grid(0.0, math.pi, request.grid_points or SUSY_GRID_POINTS)
        hamiltonian = GridHamiltonian.from_function(
            grid, lambda x: partner_potentials(w, x).v_minus, UnitSystem.natural_susy()
        )
        exact = rosen_morse_spectrum(request.b, request.n_levels).energies
    else:
        sys = _system(request)
        exact = level_energies(sys, request.n_levels)
        grid = _spectrum_grid(sys, request)
        hamiltonian = GridHamiltonian.for_system(sys, grid)
    energies = grid_eigensolve(hamiltonian, request.n_levels).energies
    rows = [
        {"n": n, "energy": energy, "exact": reference}
        for n, (energy, reference) in enumerate(zip(energies, exact))
    ]
    diagnostics = {
        "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points},
        "units": _units_dict(hamiltonian.units),
    }
    result = {"energies": energies, "exact": exact}
    return CommandOutput(result, diagnostics, ["n", "energy", "exact"], rows)


def _run_greens(request: RunRequest) -> CommandOutput:
    request.require("energy", "x_f", "x_i")
    if request.system == "isw":
        value = isw_greens(request.x_f, request.x_i, request.energy, request.policy)
        s = 0.5
    else:
        request.require("s")
        s = request.s
        query = GreensQuery(s, request.energy, request.x_f, request.x_i, request.policy)
        value = poschl_teller_greens(query)
    diagnostics = {"s": s, "rel_tol": request.rel_tol, "max_terms": request.max_terms}
    rows = [{"x_f": request.x_f, "x_i": request.x_i, "energy": request.energy, "value": value}]
    return CommandOutput({"value": value}, diagnostics, ["x_f", "x_i", "energy", "value"], rows)


def _run_susy(request: RunRequest) -> CommandOutput:
    request.require("b")
    w = Superpotential.rosen_morse(request.b)
    energies = rosen_morse_spectrum(request.b, request.n_levels).energies
    result = {
        "spectrum": energies,
        "ground_state_residual": ground_state_residual(w, Grid(0.1, math.pi - 0.1, 2001)),
    }
    passed = True
    if request.b == 1.0:
        seed = int(os.environ.get(SEED_ENV_KEY, DEFAULT_SEED))
        grid = Grid(0.0, math.pi, request.grid_points or SUSY_GRID_POINTS)
        limit = isw_limit_check(grid, request.n_levels, b=request.b, seed=seed)
        result["limit_check"] = limit.to_dict()
        passed = limit.passed
    rows = [{"n": n, "energy": energy} for n, energy in enumerate(energies)]
    return CommandOutput(result, {"units": "natural-susy"}, ["n", "energy"], rows, passed)


def _run_verify(request: RunRequest) -> CommandOutput:
    report = VerificationPipeline(suite=request.suite).run_pipeline()
    rows = [
        {
            "suite": suite.suite,
            "name": check.name,
            "passed": check.passed,
            "observed": check.observed,
            "tolerance": check.tolerance,
        }
        for suite in report.suites
        for check in suite.checks
    ]
    columns = ["suite", "name", "passed", "observed", "tolerance"]
    return CommandOutput(report.to_dict(), {"seed": report.seed}, columns, rows, report.passed)


_COMMANDS = {
    "kernel": _run_kernel,
    "trace": _run_trace,
    "spectrum": _run_spectrum,
    "greens": _run_greens,
    "susy": _run_susy,
    "verify": _run_verify,
}


def run(request: RunRequest) -> Tuple[int, str]:
    """
    Executes a request.

    Returns:
        Tuple[int, str]: Exit status and the serialized report.
    """
    try:
        output = _COMMANDS[request.command](request)
    except MirrorPathError as exc:
        _logger.error("Request failed: %s: %s", type(exc).__name__, exc)
        report = {
            "request": request.to_dict(),
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        return EXIT_INVALID_REQUEST, dump_json_report(report)

    if request.output_format == "csv":
        text = dump_csv_report(output.rows, output.columns)
    else:
        text = dump_json_report({
            "request": request.to_dict(),
            "result": output.result,
            "diagnostics": output.diagnostics,
        })
    status = EXIT_OK if output.passed else EXIT_FAILED_VERIFICATION
    return status, text


def main(argv: Optional[List[str]] = None) -> int:
    try:
        request = build_request(argv)
    except InvalidRequestError as exc:
        sys.stderr.write(f"invalid request: {exc}\n")
        return EXIT_INVALID_REQUEST
    status, text = run(request)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
