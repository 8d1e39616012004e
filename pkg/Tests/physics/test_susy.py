import math
import unittest

import numpy as np
from scipy.integrate import trapezoid

from mirrorpath.datamodels.config import Grid, Superpotential
from mirrorpath.physics.susy import (
    annihilation_residual,
    ground_state,
    ground_state_residual,
    isw_limit_check,
    partner_potentials,
    poschl_teller_potential,
    rosen_morse_spectrum,
    sample_greens_triples,
    superpotential,
    superpotential_derivative,
)

from QMUtils.exceptions import DomainError


class TestPartnerPotentials(unittest.TestCase):
    def test_unit_parameter_gives_flat_well(self):
        x = np.linspace(0.01, math.pi - 0.01, 501)
        partners = partner_potentials(Superpotential.rosen_morse(1.0), x)
        np.testing.assert_array_equal(partners.v_minus, -1.0)
        np.testing.assert_allclose(partners.v_plus, 2.0 / np.sin(x) ** 2 - 1.0, rtol=1e-14)

    def test_partners_are_square_and_derivative(self):
        w = Superpotential.rosen_morse(2.5)
        x = np.array([0.3, 1.2, 2.7])
        partners = partner_potentials(w, x)
        square = superpotential(w, x) ** 2
        derivative = superpotential_derivative(w, x)
        np.testing.assert_allclose(partners.v_minus, square - derivative, rtol=1e-12)
        np.testing.assert_allclose(partners.v_plus, square + derivative, rtol=1e-12)

    def test_derivative_matches_finite_difference(self):
        w = Superpotential.rosen_morse(1.5)
        h = 1e-5
        numeric = (superpotential(w, 1.0 + h) - superpotential(w, 1.0 - h)) / (2.0 * h)
        self.assertAlmostEqual(superpotential_derivative(w, 1.0), numeric, delta=1e-8)

    def test_oscillator_partners(self):
        partners = partner_potentials(Superpotential.oscillator_half_omega(2.0), 1.5)
        self.assertAlmostEqual(partners.v_minus, 1.5 ** 2 - 1.0, places=14)
        self.assertAlmostEqual(partners.v_plus, 1.5 ** 2 + 1.0, places=14)

    def test_walls_are_outside_domain(self):
        with self.assertRaises(DomainError):
            partner_potentials(Superpotential.rosen_morse(1.0), 0.0)
        with self.assertRaises(DomainError):
            superpotential(Superpotential.rosen_morse(1.0), np.array([1.0, math.pi]))

    def test_poschl_teller_offset(self):
        x = np.array([0.4, 1.9])
        b = 2.0
        shifted = partner_potentials(Superpotential.rosen_morse(b), x).v_minus + b ** 2
        np.testing.assert_allclose(shifted, poschl_teller_potential(x, b - 0.5), rtol=1e-13)
        np.testing.assert_array_equal(poschl_teller_potential(x, 0.5), 0.0)


class TestGroundStates(unittest.TestCase):
    def test_rosen_morse_ground_state_is_sine_power(self):
        grid = Grid(0.0, math.pi, 2001)
        psi = ground_state(Superpotential.rosen_morse(2.0), grid)
        self.assertAlmostEqual(trapezoid(psi ** 2, grid.points), 1.0, places=12)
        expected = np.sin(grid.points) ** 2 / math.sqrt(3.0 * math.pi / 8.0)
        np.testing.assert_allclose(psi, expected, atol=1e-8)

    def test_ground_state_residuals(self):
        grid = Grid(0.1, math.pi - 0.1, 2001)
        for b in (1.0, 2.0, 3.0):
            self.assertLess(ground_state_residual(Superpotential.rosen_morse(b), grid), 1e-8)
        oscillator = Superpotential.oscillator_half_omega(1.0)
        self.assertLess(ground_state_residual(oscillator, Grid(-8.0, 8.0, 2001)), 1e-8)

    def test_annihilation_residual_is_second_order(self):
        w = Superpotential.rosen_morse(1.5)
        coarse = annihilation_residual(w, Grid(0.1, math.pi - 0.1, 501))
        fine = annihilation_residual(w, Grid(0.1, math.pi - 0.1, 1001))
        self.assertGreater(math.log2(coarse / fine), 1.8)


class TestSpectrumAndLimit(unittest.TestCase):
    def test_rosen_morse_spectrum(self):
        spectrum = rosen_morse_spectrum(2.0, 3)
        np.testing.assert_allclose(spectrum.energies, [0.0, 5.0, 12.0])
        self.assertEqual(spectrum.units.mass, 0.5)
        with self.assertRaises(DomainError):
            rosen_morse_spectrum(0.0, 3)
        with self.assertRaises(DomainError):
            rosen_morse_spectrum(2.0, 0)

    def test_sampled_triples_are_repeatable(self):
        first = sample_greens_triples(1.0, 5, seed=7)
        self.assertEqual(first, sample_greens_triples(1.0, 5, seed=7))
        for x_f, x_i, energy in first:
            self.assertTrue(0.2 <= x_f <= math.pi - 0.2)
            self.assertTrue(0.2 <= x_i <= math.pi - 0.2)
            self.assertGreater(min(abs(energy - (n + 1.0) ** 2) for n in range(5)), 0.05)

    def test_limit_check_passes_at_unit_parameter(self):
        report = isw_limit_check(Grid(0.0, math.pi, 401), 4, sample_count=5)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual(
            [check.name for check in report.checks],
            ["v_minus_constant", "spectrum_shift", "greens_reduction", "poschl_teller_offset"],
        )

    def test_limit_check_potential_tolerance_is_an_argument(self):
        report = isw_limit_check(Grid(0.0, math.pi, 401), 2, potential_tol=1e-6, sample_count=2)
        tolerances = {check.name: check.tolerance for check in report.checks}
        self.assertEqual(tolerances["v_minus_constant"], 1e-6)
        self.assertEqual(tolerances["poschl_teller_offset"], 1e-6)
        self.assertEqual(tolerances["greens_reduction"], 1e-9)

    def test_limit_check_reports_failures_away_from_unit_parameter(self):
        report = isw_limit_check(Grid(0.0, math.pi, 401), 4, b=1.5, sample_count=3)
        self.assertFalse(report.passed)
        failed = {check.name for check in report.failures}
        self.assertIn("v_minus_constant", failed)
        self.assertIn("spectrum_shift", failed)
        self.assertNotIn("poschl_teller_offset", failed)


if __name__ == '__main__':
    unittest.main()
