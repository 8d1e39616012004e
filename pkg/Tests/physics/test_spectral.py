import math
import unittest
from unittest.mock import patch

import numpy as np
from scipy import special
from scipy.integrate import trapezoid

from mirrorpath.datamodels.config import GreensQuery, Grid, SeriesPolicy, SystemSpec, TimeArgument, UnitSystem
from mirrorpath.physics.kernels import half_line_kernel, isw_kernel, oscillator_kernel
from mirrorpath.physics.spectral import (
    checked_degree_ladder,
    ferrers_legendre,
    greens_residue,
    half_oscillator_eigenstate,
    isw_eigenstate,
    isw_energy,
    isw_greens,
    legendre_degree_ladder,
    level_energies,
    locate_greens_poles,
    oscillator_eigenstate,
    oscillator_eigenstates,
    parity_filtered_terms,
    poschl_teller_eigenstates,
    poschl_teller_greens,
    sine_basis_kernel,
    sine_identity_check,
    smeared_completeness,
    spectral_kernel,
    zero_energy_greens,
)

from QMUtils.exceptions import (
    DomainError,
    IndexOverflowError,
    NearPoleError,
    RouteDisagreementError,
    UnsupportedModeError,
)


def well_greens_closed_form(x_f, x_i, energy):
    """Resolvent of -d^2/dx^2 on (0, pi) from its two wall solutions."""
    lower, upper = min(x_f, x_i), max(x_f, x_i)
    if energy < 0.0:
        kappa = math.sqrt(-energy)
        return -math.sinh(kappa * lower) * math.sinh(kappa * (math.pi - upper)) / (
            kappa * math.sinh(kappa * math.pi)
        )
    k = math.sqrt(energy)
    return -math.sin(k * lower) * math.sin(k * (math.pi - upper)) / (k * math.sin(k * math.pi))


class TestEigenstates(unittest.TestCase):
    def test_isw_energy_in_natural_units(self):
        self.assertAlmostEqual(isw_energy(0), 1.0, places=14)
        self.assertAlmostEqual(isw_energy(2), 9.0, places=13)
        self.assertAlmostEqual(isw_energy(0, 1.0, UnitSystem()), math.pi ** 2 / 2.0, places=13)

    def test_isw_eigenstate_domain(self):
        with self.assertRaises(DomainError):
            isw_eigenstate(0, 3.5)

    def test_oscillator_eigenstates_match_hermite_functions(self):
        x = np.linspace(-4.0, 4.0, 17)
        states = oscillator_eigenstates(20, x, 1.0)
        for n in range(21):
            norm = 1.0 / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))
            expected = norm * special.eval_hermite(n, x) * np.exp(-0.5 * x ** 2)
            np.testing.assert_allclose(states[n], expected, rtol=1e-10, atol=1e-14)

    def test_single_oscillator_eigenstate_scales_with_omega(self):
        self.assertAlmostEqual(oscillator_eigenstate(0, 0.0, 2.0), (2.0 / math.pi) ** 0.25, places=14)
        x = np.linspace(-6.0, 6.0, 4001)
        psi = oscillator_eigenstate(3, x, 2.0)
        self.assertAlmostEqual(trapezoid(psi ** 2, x), 1.0, places=9)

    def test_oscillator_index_limit(self):
        with self.assertRaises(IndexOverflowError):
            oscillator_eigenstates(500, 0.3, 1.0)

    def test_half_oscillator_eigenstates_are_normalized(self):
        x = np.linspace(0.0, 12.0, 4001)
        for n in range(3):
            psi = half_oscillator_eigenstate(n, x, 1.0)
            self.assertAlmostEqual(trapezoid(psi ** 2, x), 1.0, places=9)
        self.assertEqual(half_oscillator_eigenstate(0, 0.0, 1.0), 0.0)

    def test_level_energies(self):
        units = UnitSystem()
        np.testing.assert_allclose(level_energies(SystemSpec.oscillator(2.0, units), 3), [1.0, 3.0, 5.0])
        np.testing.assert_allclose(level_energies(SystemSpec.half_oscillator(1.0, units), 3), [1.5, 3.5, 5.5])
        with self.assertRaises(UnsupportedModeError):
            level_energies(SystemSpec.free_line(units), 3)


class TestSpectralKernels(unittest.TestCase):
    def test_isw_spectral_matches_images(self):
        units = UnitSystem()
        sys = SystemSpec.infinite_well(1.0, units)
        t = TimeArgument.euclidean(0.05)
        value = spectral_kernel(sys, 0.3, 0.6, t, 100).re
        self.assertAlmostEqual(value, isw_kernel(0.3, 0.6, t, units, 1.0).re, delta=1e-12)

    def test_oscillator_spectral_matches_mehler(self):
        units = UnitSystem()
        sys = SystemSpec.oscillator(1.0, units)
        t = TimeArgument.euclidean(1.0)
        value = spectral_kernel(sys, 0.4, -1.1, t, 60).re
        self.assertAlmostEqual(value, oscillator_kernel(0.4, -1.1, t, 1.0, units).re, delta=1e-12)

    def test_parity_filter_is_exact(self):
        image_subtracted, odd_only = parity_filtered_terms(40, 0.7, 1.3, 0.5, 1.0)
        np.testing.assert_array_equal(image_subtracted, odd_only)
        self.assertTrue(np.all(odd_only[::2] == 0.0))

    def test_sine_identity(self):
        self.assertLess(sine_identity_check(np.linspace(0.0, 20.0, 101), (0.4, 1.7)), 1e-13)
        self.assertEqual(sine_identity_check([], (0.4, 1.7)), 0.0)

    def test_sine_basis_reproduces_half_line(self):
        expected = half_line_kernel(0.8, 1.5, TimeArgument.euclidean(0.6), UnitSystem()).re
        self.assertAlmostEqual(sine_basis_kernel(0.8, 1.5, 0.6), expected, delta=1e-10)

    def test_smeared_completeness_improves_with_terms(self):
        grid = Grid(0.0, math.pi, 2001)
        profile = lambda x: x * (math.pi - x)
        coarse = smeared_completeness(3, profile, grid)
        fine = smeared_completeness(60, profile, grid)
        self.assertLess(fine, coarse)
        self.assertLess(fine, 1e-3)


class TestLegendre(unittest.TestCase):
    def test_integer_order_zero_is_legendre(self):
        for n in range(6):
            for theta in (0.3, 1.2, 2.5):
                self.assertAlmostEqual(
                    ferrers_legendre(0.0, n, theta), special.eval_legendre(n, math.cos(theta)), delta=1e-12
                )

    def test_ladder_matches_hypergeometric_route(self):
        angles = np.array([0.3, 1.0, 2.0, 2.8])
        ladder = legendre_degree_ladder(1.3, 10, angles)
        for n in range(11):
            for j, theta in enumerate(angles):
                series = ferrers_legendre(1.3, n, float(theta))
                self.assertLess(abs(ladder[n, j] - series), 1e-10 * max(1.0, abs(series)))

    def test_checked_ladder_reflects_past_half_angle(self):
        angles = np.array([0.0, 0.4, 1.6, 2.9, math.pi])
        checked = checked_degree_ladder(1.3, 12, angles, SeriesPolicy())
        np.testing.assert_array_equal(checked, legendre_degree_ladder(1.3, 12, angles))

    def test_theta_domain(self):
        with self.assertRaises(DomainError):
            ferrers_legendre(0.5, 1, 0.0)

    def test_half_order_states_are_well_states(self):
        x = np.linspace(0.1, 3.0, 13)
        states = poschl_teller_eigenstates(0.5, 4, x)
        for n in range(5):
            np.testing.assert_allclose(states[n], isw_eigenstate(n, x), atol=1e-12)

    def test_poschl_teller_states_orthonormal(self):
        x = np.linspace(0.0, math.pi, 4001)
        states = poschl_teller_eigenstates(1.3, 3, x)
        overlaps = trapezoid(states[:, None, :] * states[None, :, :], x, axis=2)
        np.testing.assert_allclose(overlaps, np.eye(4), atol=1e-6)


class TestGreensFunctions(unittest.TestCase):
    def test_zero_energy_closed_form(self):
        expected = -1.0 * (math.pi - 2.0) / math.pi
        self.assertAlmostEqual(zero_energy_greens(0.5, 1.0, 2.0), expected, delta=1e-12)
        self.assertAlmostEqual(zero_energy_greens(0.5, 2.0, 1.0), expected, delta=1e-12)

    def test_isw_greens_against_wall_solutions(self):
        for energy in (-2.0, 0.0, 2.5, 6.3):
            for x_f, x_i in ((1.0, 1.3), (0.4, 2.9)):
                if energy == 0.0:
                    lower, upper = min(x_f, x_i), max(x_f, x_i)
                    expected = -lower * (math.pi - upper) / math.pi
                else:
                    expected = well_greens_closed_form(x_f, x_i, energy)
                self.assertAlmostEqual(isw_greens(x_f, x_i, energy), expected, delta=1e-10)

    def test_poschl_teller_reduces_to_well(self):
        policy = SeriesPolicy(rel_tol=1e-11)
        general = poschl_teller_greens(GreensQuery(0.5, 2.5, 1.0, 1.3, policy))
        self.assertAlmostEqual(general, well_greens_closed_form(1.0, 1.3, 2.5), delta=1e-9)

    @patch('mirrorpath.physics.spectral.legendre_degree_ladder')
    def test_greens_series_rejects_a_wrong_ladder(self, mock_ladder):
        mock_ladder.side_effect = lambda s, n_max, theta: 1.01 * legendre_degree_ladder(s, n_max, theta)
        with self.assertRaises(RouteDisagreementError):
            poschl_teller_greens(GreensQuery(1.3, 2.0, 1.0, 2.0))

    def test_near_pole(self):
        with self.assertRaises(NearPoleError):
            isw_greens(1.0, 1.3, 4.0 + 1e-12)
        with self.assertRaises(NearPoleError):
            poschl_teller_greens(GreensQuery(1.0, 2.25, 1.0, 1.3))

    def test_positions_on_interval(self):
        with self.assertRaises(DomainError):
            isw_greens(-0.1, 1.0, 0.5)
        with self.assertRaises(DomainError):
            GreensQuery(1.0, 0.5, 3.2, 1.0)

    def test_residues(self):
        for n in range(3):
            exact = isw_eigenstate(n, 1.0) * isw_eigenstate(n, 1.3)
            self.assertAlmostEqual(greens_residue(1.0, 1.3, n), exact, delta=1e-6)

    def test_poles(self):
        poles = locate_greens_poles(1.0, 1.3, 0.5, 10.0)
        np.testing.assert_allclose(poles, [1.0, 4.0, 9.0], atol=1e-6)


if __name__ == '__main__':
    unittest.main()
