import math
import unittest

import numpy as np

from mirrorpath.datamodels.artifact import (
    CheckResultArtifactEntity,
    GridPropagator,
    KernelValue,
    Spectrum,
    SuiteReportArtifactEntity,
    TraceCurve,
    VerificationReportArtifactEntity,
)
from mirrorpath.datamodels.config import Grid

from QMUtils.exceptions import DomainError


class TestKernelValue(unittest.TestCase):
    def test_complex_view(self):
        value = KernelValue.from_complex(3.0 - 4.0j)
        self.assertEqual(value.value, 3.0 - 4.0j)
        self.assertEqual(abs(value), 5.0)
        self.assertEqual(value.to_dict(), {"re": 3.0, "im": -4.0})


class TestSpectrum(unittest.TestCase):
    def test_energies_must_increase(self):
        with self.assertRaises(DomainError):
            Spectrum([1.0, 1.0])
        self.assertEqual(len(Spectrum([1.0, 2.0])), 2)

    def test_eigenfunctions_must_be_normalized(self):
        grid = Grid(0.0, math.pi, 201)
        state = np.sqrt(2.0 / math.pi) * np.sin(grid.points)
        Spectrum([1.0], eigenfunctions=state, grid=grid)
        with self.assertRaises(DomainError):
            Spectrum([1.0], eigenfunctions=2.0 * state, grid=grid)
        with self.assertRaises(DomainError):
            Spectrum([1.0], eigenfunctions=state)

    def test_shift_and_report(self):
        spectrum = Spectrum([0.0, 3.0], uncertainties=[0.1, 0.2]).shifted(1.0)
        np.testing.assert_allclose(spectrum.energies, [1.0, 4.0])
        report = Spectrum([1.0], uncertainties=[0.5]).to_dict()
        self.assertEqual(report, {"energies": [1.0], "uncertainties": [0.5]})


class TestTraceCurve(unittest.TestCase):
    def test_accepts_boltzmann_sums(self):
        betas = np.array([0.5, 1.0, 1.5])
        curve = TraceCurve(betas, np.exp(-betas) + np.exp(-4.0 * betas))
        self.assertEqual(curve.log_slopes().shape, (2,))
        self.assertEqual(curve.to_dict()["provenance"], "synthetic")

    def test_rejects_invalid_curves(self):
        with self.assertRaises(DomainError):
            TraceCurve([1.0, 0.5], [0.3, 0.2])
        with self.assertRaises(DomainError):
            TraceCurve([0.5, 1.0], [0.3, -0.2])
        with self.assertRaises(DomainError):
            TraceCurve([0.5, 1.0], [0.2, 0.3])
        with self.assertRaises(DomainError):
            TraceCurve([1.0, 2.0, 3.0], [1.0, 0.9, 0.1])


class TestGridPropagator(unittest.TestCase):
    def test_single_level(self):
        grid = Grid(0.0, math.pi, 401)
        state = np.sqrt(2.0 / math.pi) * np.sin(grid.points)
        propagator = GridPropagator(grid, 2.0, [math.exp(-2.0)], state)
        self.assertEqual(propagator.n_levels, 1)
        expected = math.exp(-2.0) * 2.0 / math.pi * math.sin(1.0) * math.sin(2.0)
        self.assertAlmostEqual(propagator.evaluate(1.0, 2.0), expected, delta=1e-8)
        self.assertAlmostEqual(propagator.diagonal_trace(), math.exp(-2.0), delta=1e-10)
        self.assertEqual(propagator.values.shape, (401, 401))


class TestReports(unittest.TestCase):
    def test_pass_aggregation(self):
        good = CheckResultArtifactEntity("a", True, 1e-12, 1e-9)
        bad = CheckResultArtifactEntity("b", False, math.nan, 1e-9, "raised")
        self.assertTrue(SuiteReportArtifactEntity("kernels", [good]).passed)
        mixed = SuiteReportArtifactEntity("greens", [good, bad])
        self.assertFalse(mixed.passed)
        report = VerificationReportArtifactEntity(7, [mixed])
        self.assertFalse(report.passed)
        self.assertEqual(report.to_dict()["suites"][0]["checks"][1]["message"], "raised")
        self.assertFalse(VerificationReportArtifactEntity(7, []).passed)


if __name__ == '__main__':
    unittest.main()
