import math
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

from mirrorpath.constants.pipeline import verification as verification_constants
from mirrorpath.datamodels.config import (
    Grid,
    GridHamiltonian,
    KernelVerificationConfigEntity,
    RunRequest,
    SeriesPolicy,
    SusyVerificationConfigEntity,
    SystemKind,
    SystemSpec,
    TimeArgument,
    UnitSystem,
    VerificationPipelineConfigEntity,
)

from QMUtils.exceptions import DomainError, InvalidRequestError, ZeroTimeError


class TestNumericalInputs(unittest.TestCase):
    def test_series_policy(self):
        self.assertEqual(SeriesPolicy().max_terms, 100_000)
        with self.assertRaises(DomainError):
            SeriesPolicy(rel_tol=0.0)
        with self.assertRaises(DomainError):
            SeriesPolicy(max_terms=0)
        with self.assertRaises(ValueError):
            SeriesPolicy(max_terms=2.5)

    def test_time_argument(self):
        self.assertTrue(TimeArgument.euclidean(0.5).is_euclidean)
        self.assertFalse(TimeArgument.real(-0.5).is_euclidean)
        with self.assertRaises(ZeroTimeError):
            TimeArgument.real(0.0)
        with self.assertRaises(ZeroTimeError):
            TimeArgument.euclidean(0.0)
        with self.assertRaises(DomainError):
            TimeArgument.euclidean(-1.0)
        with self.assertRaises(DomainError):
            TimeArgument.real(math.nan)

    def test_units(self):
        natural = UnitSystem.natural_susy()
        self.assertEqual((natural.hbar, natural.mass), (1.0, 0.5))
        np.testing.assert_allclose(UnitSystem().convert_energies([1.0, 4.0], natural), [2.0, 8.0])
        with self.assertRaises(DomainError):
            UnitSystem(hbar=-1.0)

    def test_system_spec(self):
        with self.assertRaises(DomainError):
            SystemSpec(SystemKind.INFINITE_WELL)
        with self.assertRaises(DomainError):
            SystemSpec(SystemKind.HALF_OSCILLATOR)
        well = SystemSpec.infinite_well(2.0)
        self.assertEqual(well.allowed_region, (0.0, 2.0))
        self.assertTrue(well.has_wall_at_origin)
        self.assertFalse(SystemSpec.oscillator(1.0).has_wall_at_origin)
        np.testing.assert_allclose(SystemSpec.oscillator(2.0).potential([1.0]), [2.0])
        self.assertEqual(SystemSpec.oscillator(4.0).length_scale(0.01), 0.5)

    def test_grid(self):
        grid = Grid(0.0, 1.0, 5)
        self.assertEqual(grid.spacing, 0.25)
        np.testing.assert_allclose(grid.interior, [0.25, 0.5, 0.75])
        self.assertAlmostEqual(grid.trapezoid_weights().sum(), 1.0)
        with self.assertRaises(DomainError):
            Grid(0.0, 1.0, 1)
        with self.assertRaises(DomainError):
            Grid(1.0, 1.0, 5)

    def test_grid_hamiltonian(self):
        grid = Grid(0.0, 1.0, 6)
        h = GridHamiltonian.from_function(grid, lambda x: 3.0 * x)
        self.assertEqual(h.potential[0], 0.0)
        self.assertEqual(h.diagonal.shape, (4,))
        self.assertEqual(h.off_diagonal.shape, (3,))
        self.assertAlmostEqual(h.diagonal[0] - 2.0 * h.kinetic_scale, 0.6)
        with self.assertRaises(DomainError):
            GridHamiltonian(grid, np.zeros(3))


class TestRunRequest(unittest.TestCase):
    def test_rejects_unknown_values(self):
        with self.assertRaises(InvalidRequestError):
            RunRequest("propagate")
        with self.assertRaises(InvalidRequestError):
            RunRequest("kernel", system="box")
        with self.assertRaises(InvalidRequestError):
            RunRequest("kernel", units="atomic")
        with self.assertRaises(InvalidRequestError):
            RunRequest("susy", b=1.0, n_levels=0)

    def test_require_names_flags(self):
        request = RunRequest("kernel", system="half-line")
        with self.assertRaises(InvalidRequestError) as context:
            request.require("x_f", "x_i", "real_tau")
        self.assertIn("--xf, --xi, --real-tau", str(context.exception))
        request.require("system")

    def test_policy(self):
        policy = RunRequest("greens", rel_tol=1e-8, max_terms=50).policy
        self.assertEqual((policy.rel_tol, policy.max_terms), (1e-8, 50))


class TestVerificationConfig(unittest.TestCase):
    def test_suites(self):
        self.assertEqual(VerificationPipelineConfigEntity().suites, verification_constants.SUITES)
        self.assertEqual(VerificationPipelineConfigEntity(suite="greens").suites, ("greens",))
        with self.assertRaises(InvalidRequestError):
            VerificationPipelineConfigEntity(suite="everything")

    @patch.dict(os.environ, {"MIRRORPATH_SEED": "17"})
    def test_seed_from_environment(self):
        self.assertEqual(VerificationPipelineConfigEntity().seed, 17)

    def test_missing_file_falls_back_to_constants(self):
        config = VerificationPipelineConfigEntity(config_file_path=Path("/nonexistent/verification.yaml"))
        kernels = KernelVerificationConfigEntity(verification_pipeline_config=config)
        self.assertEqual(kernels.mehler_tol, verification_constants.KERNEL_MEHLER_TOL)
        self.assertEqual(kernels.betas, verification_constants.KERNEL_BETAS)

    def test_yaml_overrides(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "verification.yaml"
            path.write_text("kernels:\n  mehler_tol: 1.0e-3\nsusy:\n  b_values: [1.0]\n")
            config = VerificationPipelineConfigEntity(config_file_path=path)
            kernels = KernelVerificationConfigEntity(verification_pipeline_config=config)
            susy = SusyVerificationConfigEntity(verification_pipeline_config=config)
        self.assertEqual(kernels.mehler_tol, 1e-3)
        self.assertEqual(kernels.parity_tol, verification_constants.KERNEL_PARITY_TOL)
        self.assertEqual(tuple(susy.b_values), (1.0,))


if __name__ == '__main__':
    unittest.main()
