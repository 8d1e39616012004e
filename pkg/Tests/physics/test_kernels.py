import cmath
import math
import unittest

import numpy as np
from scipy import integrate, special

from mirrorpath.datamodels.config import SeriesPolicy, SystemSpec, TimeArgument, UnitSystem
from mirrorpath.physics.kernels import (
    boltzmann_sum,
    euclidean_kernel_array,
    free_kernel,
    half_line_kernel,
    half_oscillator_kernel,
    image_kernel,
    isw_kernel,
    kernel,
    oscillator_kernel,
)

from QMUtils.exceptions import (
    CausticError,
    DomainError,
    SeriesTruncationError,
    UnsupportedModeError,
)


def hermite_function(n, x):
    """Normalized Hermite function for m = omega = hbar = 1 from scipy."""
    norm = 1.0 / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))
    return norm * special.eval_hermite(n, x) * math.exp(-0.5 * x ** 2)


class TestFreeAndHalfLine(unittest.TestCase):
    def setUp(self):
        self.units = UnitSystem()
        self.beta = TimeArgument.euclidean(0.7)

    def test_free_kernel_is_normalized(self):
        total, _ = integrate.quad(lambda x: free_kernel(x, 0.3, self.beta, self.units).re, -30, 30)
        self.assertAlmostEqual(total, 1.0, places=10)

    def test_free_kernel_real_time_modulus(self):
        value = free_kernel(1.0, 0.2, TimeArgument.real(0.5), self.units)
        self.assertAlmostEqual(abs(value), math.sqrt(1.0 / (2.0 * math.pi * 0.5)), places=14)

    def test_half_line_is_image_difference(self):
        for x_f, x_i in ((0.5, 1.0), (2.0, 0.1), (3.0, 3.5)):
            direct = free_kernel(x_f, x_i, self.beta, self.units).re
            mirrored = free_kernel(x_f, -x_i, self.beta, self.units).re
            value = half_line_kernel(x_f, x_i, self.beta, self.units).re
            self.assertAlmostEqual(value, direct - mirrored, delta=1e-14)

    def test_half_line_real_time_matches_image_kernel(self):
        t = TimeArgument.real(0.9)
        for x_f, x_i in ((0.5, 1.0), (2.0, 0.1)):
            stable = half_line_kernel(x_f, x_i, t, self.units).value
            difference = image_kernel(x_f, x_i, t, self.units).value
            self.assertLess(abs(stable - difference), 1e-13)

    def test_boundary_law(self):
        for beta in (0.1, 1.0, 5.0):
            scale = math.sqrt(1.0 / (2.0 * math.pi * beta))
            for x_i in np.linspace(0.2, 5.0, 25):
                value = half_line_kernel(1e-6, float(x_i), TimeArgument.euclidean(beta), self.units)
                self.assertLessEqual(abs(value), 1e-5 * scale)

    def test_half_line_positions_must_be_positive(self):
        with self.assertRaises(DomainError):
            half_line_kernel(-0.1, 1.0, self.beta, self.units)

    def test_image_kernel_is_odd(self):
        for t in (self.beta, TimeArgument.real(1.3)):
            forward = image_kernel(0.4, 0.9, t, self.units).value
            mirrored = image_kernel(0.4, -0.9, t, self.units).value
            self.assertEqual(forward + mirrored, 0.0)


class TestInfiniteWell(unittest.TestCase):
    def setUp(self):
        self.units = UnitSystem()

    def sine_series(self, x_f, x_i, beta, width):
        k = np.arange(1, 400) * math.pi / width
        terms = (2.0 / width) * np.sin(k * x_f) * np.sin(k * x_i) * np.exp(-k ** 2 * beta / 2.0)
        return math.fsum(terms)

    def test_matches_sine_series(self):
        for beta in (0.05, 0.4):
            for x_f, x_i in ((0.2, 0.7), (0.5, 0.5), (0.9, 0.1)):
                value = isw_kernel(x_f, x_i, TimeArgument.euclidean(beta), self.units, 1.0).re
                self.assertAlmostEqual(value, self.sine_series(x_f, x_i, beta, 1.0), delta=1e-12)

    def test_vectorized_matches_pointwise(self):
        sys = SystemSpec.infinite_well(2.0, self.units)
        x = np.array([0.3, 1.1, 1.9])
        values = euclidean_kernel_array(sys, x, 0.8, 0.6)
        for position, value in zip(x, values):
            expected = isw_kernel(float(position), 0.8, TimeArgument.euclidean(0.6), self.units, 2.0).re
            self.assertAlmostEqual(value, expected, delta=1e-13)

    def test_vanishes_at_walls(self):
        sys = SystemSpec.infinite_well(1.0, self.units)
        values = euclidean_kernel_array(sys, np.array([0.0, 1.0]), 0.4, 0.3)
        np.testing.assert_allclose(values, 0.0, atol=1e-15)

    def test_real_time_unsupported(self):
        with self.assertRaises(UnsupportedModeError):
            isw_kernel(0.2, 0.3, TimeArgument.real(0.1), self.units, 1.0)

    def test_truncation(self):
        with self.assertRaises(SeriesTruncationError):
            isw_kernel(0.2, 0.3, TimeArgument.euclidean(100.0), self.units, 1.0, SeriesPolicy(max_terms=1))

    def test_positions_inside_well(self):
        with self.assertRaises(DomainError):
            isw_kernel(1.2, 0.3, TimeArgument.euclidean(0.1), self.units, 1.0)


class TestOscillators(unittest.TestCase):
    def setUp(self):
        self.units = UnitSystem()

    def test_mehler_matches_hermite_sum(self):
        beta = 1.0
        for x_f, x_i in ((0.0, 0.0), (0.5, -1.2), (1.7, 1.1)):
            series = math.fsum(
                math.exp(-(n + 0.5) * beta) * hermite_function(n, x_f) * hermite_function(n, x_i)
                for n in range(60)
            )
            value = oscillator_kernel(x_f, x_i, TimeArgument.euclidean(beta), 1.0, self.units).re
            self.assertAlmostEqual(value, series, delta=1e-12)

    def test_half_oscillator_is_odd_sum(self):
        beta = 0.8
        x_f, x_i = 0.6, 1.4
        series = math.fsum(
            2.0 * math.exp(-(n + 0.5) * beta) * hermite_function(n, x_f) * hermite_function(n, x_i)
            for n in range(1, 80, 2)
        )
        value = half_oscillator_kernel(x_f, x_i, TimeArgument.euclidean(beta), 1.0, self.units).re
        self.assertAlmostEqual(value, series, delta=1e-12)

    def test_real_time_caustic(self):
        with self.assertRaises(CausticError):
            oscillator_kernel(0.1, 0.2, TimeArgument.real(math.pi), 1.0, self.units)
        with self.assertRaises(CausticError):
            oscillator_kernel(0.1, 0.2, TimeArgument.real(-0.5), 1.0, self.units)

    def test_small_omega_tends_to_free(self):
        t = TimeArgument.real(0.5)
        oscillator = oscillator_kernel(0.3, 0.8, t, 1e-6, self.units).value
        free = free_kernel(0.3, 0.8, t, self.units).value
        self.assertLess(abs(oscillator - free), 1e-6)

    def test_half_oscillator_real_time_is_image_difference(self):
        t = TimeArgument.real(0.7)
        direct = oscillator_kernel(0.5, 1.2, t, 1.0, self.units).value
        mirrored = oscillator_kernel(0.5, -1.2, t, 1.0, self.units).value
        value = half_oscillator_kernel(0.5, 1.2, t, 1.0, self.units).value
        self.assertLess(abs(value - (direct - mirrored)), 1e-13)

    def test_large_beta_has_no_overflow(self):
        value = oscillator_kernel(0.5, 0.5, TimeArgument.euclidean(300.0), 1.0, self.units).re
        self.assertTrue(math.isfinite(value))
        self.assertGreater(value, 0.0)


class TestDispatch(unittest.TestCase):
    def test_kernel_dispatches_by_system(self):
        t = TimeArgument.euclidean(0.5)
        units = UnitSystem()
        self.assertEqual(
            kernel(SystemSpec.half_oscillator(2.0, units), 0.4, 0.9, t),
            half_oscillator_kernel(0.4, 0.9, t, 2.0, units),
        )
        self.assertEqual(kernel(SystemSpec.free_line(units), 0.4, 0.9, t), free_kernel(0.4, 0.9, t, units))

    def test_boltzmann_sum(self):
        self.assertAlmostEqual(boltzmann_sum([1.0, 2.0], 1.0), math.exp(-1.0) + math.exp(-2.0), places=15)
        self.assertAlmostEqual(boltzmann_sum([1.0], 2.0, hbar=2.0), math.exp(-1.0), places=15)


if __name__ == '__main__':
    unittest.main()
