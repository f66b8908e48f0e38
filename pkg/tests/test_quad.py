import math

import numpy as np
import pytest
import scipy.integrate

from rmtcross import quad
from rmtcross.errors import ConvergenceError, DomainError


class TestFinite:
    def test_constant(self):
        assert abs(quad.integrate_finite(lambda x: np.ones_like(x), 0.0, 1.0) - 1.0) < 1e-14

    def test_sine(self):
        assert abs(quad.integrate_finite(np.sin, 0.0, math.pi) - 2.0) < 1e-12

    def test_benign_composite(self):
        val = quad.integrate_finite(lambda x: np.sqrt(x) / np.sqrt(x), 1e-12, 1.0)
        assert abs(val - 1.0) < 1e-10

    def test_against_scipy(self):
        f = lambda x: np.exp(-x) * np.cos(5 * x)
        mine = quad.integrate_finite(f, 0.0, 4.0)
        ref, _ = scipy.integrate.quad(f, 0.0, 4.0, epsabs=1e-13, epsrel=1e-13)
        assert abs(mine - ref) < 1e-11

    def test_bounds_order(self):
        with pytest.raises(DomainError):
            quad.integrate_finite(np.sin, 1.0, 0.0)

    def test_depth_exhaustion_carries_estimate(self):
        spec = quad.QuadratureSpec(abs_tol=1e-300, rel_tol=1e-16, max_depth=3)
        with pytest.raises(ConvergenceError) as exc:
            quad.integrate_finite(lambda x: np.abs(x - 1.0 / 3.0) ** 0.2, 0.0, 1.0, spec)
        assert exc.value.estimate is not None
        assert abs(exc.value.estimate - 0.694) < 0.05


class TestHalfline:
    def test_half_gaussian(self):
        val = quad.integrate_halfline_gaussian(lambda x: np.exp(-x * x), 1.0)
        assert abs(val - math.sqrt(math.pi) / 2.0) < 1e-12

    def test_x_exp(self):
        val = quad.integrate_halfline_gaussian(lambda x: x * np.exp(-2.0 * x * x), 2.0)
        assert abs(val - 0.25) < 1e-12

    def test_x2_gaussian(self):
        val = quad.integrate_halfline_gaussian(lambda x: x * x * np.exp(-x * x), 1.0)
        assert abs(val - math.sqrt(math.pi) / 4.0) < 1e-12


class TestQuadrant:
    def test_gaussian(self):
        val = quad.integrate_quadrant(lambda x, y: np.exp(-x * x - y * y), 1.0)
        assert abs(val - math.pi / 4.0) < 1e-10

    def test_antisymmetric_vanishes(self):
        val = quad.integrate_quadrant(lambda x, y: (x - y) * np.exp(-x * x - y * y), 1.0)
        assert abs(val) < 1e-11

    def test_separable(self):
        val = quad.integrate_quadrant(lambda x, y: x * y * np.exp(-2.0 * (x * x + y * y)), 2.0)
        assert abs(val - 1.0 / 16.0) < 1e-11

    def test_matches_product_of_halflines(self):
        f1 = quad.integrate_halfline_gaussian(lambda x: x * np.exp(-x * x), 1.0)
        v = quad.integrate_quadrant(lambda x, y: x * y * np.exp(-x * x - y * y), 1.0)
        assert abs(v - f1 * f1) < 1e-12


def test_halving_rel_tol_never_hurts():
    exact = 2.0
    discrepancies = []
    for rel in (1e-5, 5e-6, 2.5e-6, 1e-8):
        spec = quad.QuadratureSpec(abs_tol=1e-300, rel_tol=rel, max_depth=50)
        discrepancies.append(abs(quad.integrate_finite(np.sin, 0.0, math.pi, spec) - exact))
    assert all(d2 <= d1 + 1e-15 for d1, d2 in zip(discrepancies, discrepancies[1:]))


def test_spec_validation():
    with pytest.raises(DomainError):
        quad.QuadratureSpec(abs_tol=-1.0)
    with pytest.raises(DomainError):
        quad.QuadratureSpec(max_depth=100)
    with pytest.raises(DomainError):
        quad.QuadratureSpec(truncation_margin=3.0)
