import math
import unittest

import numpy as np
from scipy import special

from mirrorpath.datamodels.config import HypergeometricArgs, SeriesPolicy
from mirrorpath.physics.specfun import (
    ferrers_half_closed_form,
    ferrers_half_series,
    ferrers_legendre_half,
    gamma,
    hermite,
    hyp2f1,
    log_gamma,
)

from QMUtils.exceptions import DomainError, PoleError, SeriesTruncationError


class TestGamma(unittest.TestCase):
    def test_against_scipy(self):
        for x in (0.1, 0.5, 1.0, 1.5, 3.7, 10.0, 25.5, -0.5, -2.3):
            self.assertAlmostEqual(gamma(x) / special.gamma(x), 1.0, places=12)

    def test_known_values(self):
        self.assertAlmostEqual(gamma(0.5), math.sqrt(math.pi), places=14)
        self.assertAlmostEqual(gamma(5.0), 24.0, places=11)

    def test_poles(self):
        for x in (0.0, -1.0, -7.0):
            with self.assertRaises(PoleError):
                gamma(x)

    def test_overflow_is_inf(self):
        self.assertEqual(gamma(200.0), math.inf)

    def test_log_gamma(self):
        for x in (0.3, 2.0, 50.0, 300.0):
            self.assertAlmostEqual(log_gamma(x), special.gammaln(x), delta=1e-12 * max(1.0, abs(special.gammaln(x))))
        with self.assertRaises(DomainError):
            log_gamma(-1.0)


class TestHyp2f1(unittest.TestCase):
    def test_against_scipy(self):
        cases = [(0.5, 0.5, 1.5, 0.3), (-2.5, 3.5, 1.5, 0.7), (1.0, 2.0, 3.0, -0.4), (0.5, 0.5, 1.0, 0.9)]
        for a, b, c, z in cases:
            value = hyp2f1(HypergeometricArgs(a, b, c, z))
            self.assertAlmostEqual(value, special.hyp2f1(a, b, c, z), delta=1e-10 * abs(value))

    def test_terminating_series(self):
        # F(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        value = hyp2f1(HypergeometricArgs(-2.0, 3.0, 2.0, 0.5))
        self.assertAlmostEqual(value, 1.0 - 1.5 + 12.0 * 0.25 / 6.0, places=15)

    def test_elementary_reduction(self):
        # F(1, 1; 2; z) = -ln(1 - z) / z
        z = 0.4
        self.assertAlmostEqual(hyp2f1(HypergeometricArgs(1.0, 1.0, 2.0, z)), -math.log1p(-z) / z, places=12)

    def test_errors(self):
        with self.assertRaises(DomainError):
            hyp2f1(HypergeometricArgs(0.5, 0.5, 1.0, 1.0))
        with self.assertRaises(PoleError):
            hyp2f1(HypergeometricArgs(0.5, 0.5, -2.0, 0.5))
        with self.assertRaises(SeriesTruncationError):
            hyp2f1(HypergeometricArgs(0.5, 0.5, 1.0, 0.99), SeriesPolicy(max_terms=5))


class TestHermite(unittest.TestCase):
    def test_against_scipy(self):
        x = np.linspace(-3.0, 3.0, 13)
        for n in (0, 1, 2, 7, 12):
            np.testing.assert_allclose(hermite(n, x), special.eval_hermite(n, x), rtol=1e-12, atol=1e-12)

    def test_exact_parity(self):
        x = np.linspace(0.1, 4.0, 40)
        for n in range(10):
            np.testing.assert_array_equal(hermite(n, -x), (-1) ** n * hermite(n, x))

    def test_scalar_input(self):
        self.assertEqual(hermite(2, 1.0), 2.0)


class TestFerrersHalf(unittest.TestCase):
    def test_routes_agree(self):
        for theta in (0.3, 1.0, 2.0, 2.8):
            for n in range(11):
                closed = ferrers_half_closed_form(n, theta)
                self.assertAlmostEqual(ferrers_half_series(n, theta), closed, delta=1e-8)
                self.assertEqual(ferrers_legendre_half(n, theta), closed)

    def test_ground_degree(self):
        # P^{-1/2}_{1/2}(cos t) = sqrt(2 / (pi sin t)) sin t
        theta = 1.1
        self.assertAlmostEqual(
            ferrers_legendre_half(0, theta), math.sqrt(2.0 * math.sin(theta) / math.pi), places=14
        )

    def test_domain(self):
        with self.assertRaises(DomainError):
            ferrers_legendre_half(2, 0.0)
        with self.assertRaises(DomainError):
            ferrers_legendre_half(-1, 1.0)


if __name__ == '__main__':
    unittest.main()
