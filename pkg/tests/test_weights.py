import math

import numpy as np
import pytest

from rmtcross import quad, weights
from rmtcross.errors import DomainError


class TestFNu:
    def test_values_at_zero(self):
        assert weights.f_nu(0, 0.7, 0.0) == 1.0
        assert weights.f_nu(1, 0.7, 0.0) == 0.0

    def test_elementary_value(self):
        assert abs(weights.f_nu(0, 1.0, 0.5) - math.cosh(2.0)) < 1e-14

    def test_log_variant_matches(self):
        for nu in (0, 1):
            logf, sign = weights.f_nu_log(nu, 0.5, 0.8)
            direct = weights.f_nu(nu, 0.5, 0.8)
            assert abs(sign * math.exp(logf) / direct - 1.0) < 1e-13

    def test_log_variant_large(self):
        logf, sign = weights.f_nu_log(1, 0.1, 50.0)
        assert sign == 1.0 and logf == pytest.approx(4.0 * 50.0 / 0.01 - math.log(2.0), rel=1e-12)


class TestOnePointWeight:
    def test_nu1_vanishes_at_zero(self):
        assert weights.g_weight(1, 0.6, 0.0) == 0.0

    def test_value_at_origin(self):
        assert abs(weights.g_weight(0, 0.5, 0.0) - math.sqrt(math.pi * 0.25 * 0.75 / 8.0)) < 1e-15

    def test_definitional_oracle_grid(self):
        for nu in (0, 1):
            for a in (0.2, 0.5, 0.9):
                for y in (0.1, 0.7, 1.5, 3.0):
                    closed = weights.g_weight(nu, a, y)
                    oracle = weights.g_weight_def_oracle(nu, a, y)
                    assert abs(closed - oracle) < 1e-9, (nu, a, y)

    def test_small_a_scaling(self):
        # g_0 / a -> sqrt(pi/8) exp(-2 y^2)
        a, y = 1e-3, 0.9
        lim = math.sqrt(math.pi / 8.0) * math.exp(-2.0 * y * y)
        assert abs(weights.g_weight(0, a, y) / a - lim) < 1e-5

    def test_evenness_against_definition(self):
        # the defining integrand is even in y: x^nu f_nu(x y) even under y -> -y
        a, y = 0.5, 0.8
        for nu in (0, 1):
            decay = 2.0 / (a * a * (1.0 - a * a))

            def integrand(x, yy=y, nu=nu):
                logf, sign = weights.f_nu_log(nu, a, -x * yy)  # negative argument
                return sign * np.exp(-decay * x * x + logf - 2.0 * yy * yy / (a * a))

            val = quad.integrate_halfline_gaussian(integrand, decay, extent=y)
            val *= (-y) ** nu if nu else 1.0
            assert abs(val - weights.g_weight(nu, a, y)) < 1e-9

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            weights.g_weight(0, 0.5, -0.1)


class TestTwoPointWeight:
    def test_antisymmetry_exact(self):
        for nu in (0, 1):
            for (x, y) in ((0.3, 0.9), (1.1, 0.2), (2.0, 2.5)):
                assert weights.G_weight(nu, 0.6, x, y) == -weights.G_weight(nu, 0.6, y, x)
        assert weights.G_weight(0, 0.6, 0.8, 0.8) == 0.0

    def test_definitional_oracle_grid(self):
        pts = (0.15, 0.5, 0.9, 1.4, 2.2)
        for nu in (0, 1):
            for a in (0.2, 0.5, 0.9):
                for x in pts:
                    for y in pts:
                        closed = weights.G_weight(nu, a, x, y)
                        oracle = weights.G_weight_def_oracle(nu, a, x, y)
                        assert abs(closed - oracle) < 1e-8, (nu, a, x, y)

    def test_nu1_vanishes_on_axis(self):
        assert weights.G_weight(1, 0.5, 0.0, 1.0) == 0.0
        assert weights.G_weight_def_oracle(1, 0.5, 0.0, 1.0) == 0.0

    def test_small_a_limit(self):
        a, x, y = 1e-2, 0.3, 0.8
        lim = math.pi / 8.0 * math.exp(-2.0 * (x * x + y * y)) * np.sign(y * y - x * x)
        assert abs(weights.G_weight(0, a, x, y) / a ** 2 - lim) < 1e-3

    def test_gt_decomposition(self):
        # G_1 = x y G_0 - Gtilde_1
        a, x, y = 0.5, 0.3, 0.8
        lhs = weights.G_weight(1, a, x, y)
        rhs = x * y * weights.G_weight(0, a, x, y) - weights.G_tilde1(a, x, y)
        assert abs(lhs - rhs) < 1e-9

    def test_large_argument_factorization(self):
        # G(x, y) / (y^nu g_0(y)) -> g_nu(x) for large y
        a, x, y = 0.5, 0.8, 6.0
        for nu in (0, 1):
            ratio = weights.G_weight(nu, a, x, y) / (y ** nu * weights.g_weight(0, a, y))
            assert abs(ratio / weights.g_weight(nu, a, x) - 1.0) < 1e-4


class TestBarQuantities:
    def test_gbar1_vanishes_at_zero(self):
        assert weights.G_bar(1, 0.5, 0.0) == 0.0

    def test_gbar_vs_integral(self):
        for nu in (0, 1):
            for a in (0.2, 0.5, 0.9):
                y = 0.7
                closed = weights.G_bar(nu, a, y)
                oracle = quad.integrate_halfline_gaussian(
                    lambda x: weights.G_weight(nu, a, x, np.full_like(np.asarray(x), y)),
                    2.0,
                    extent=1.0,
                )
                assert abs(closed - oracle) < 1e-8

    def test_gbar_constant_forms(self):
        assert abs(weights.g_bar(0, 0.5) - math.pi * 0.5 * math.sqrt(0.75) / 8.0) < 1e-15
        for nu in (0, 1):
            for a in (0.1, 0.3, 0.5, 0.7, 0.9):
                assert abs(weights.g_bar(nu, a) - weights.g_bar_direct(nu, a)) < 1e-14

    def test_gbar_vs_quadrature(self):
        for nu in (0, 1):
            a = 0.4
            val = quad.integrate_halfline_gaussian(lambda y: weights.g_weight(nu, a, y), 2.0)
            assert abs(val - weights.g_bar(nu, a)) < 1e-9


class TestModifiedWeight:
    def test_diagonal_zero(self):
        assert weights.H_weight(0, 0.5, 0.6, 0.6) == 0.0
        assert weights.H_weight(1, 0.5, 0.6, 0.6) == 0.0

    def test_antisymmetry_exact(self):
        for nu in (0, 1):
            assert weights.H_weight(nu, 0.5, 0.3, 0.9) == -weights.H_weight(nu, 0.5, 0.9, 0.3)

    def test_row_integral_vanishes(self):
        # the subtraction makes every polynomial skew-orthogonal to 1
        for nu in (0, 1):
            x = 0.6
            val = quad.integrate_halfline_gaussian(
                lambda y: weights.H_weight(nu, 0.5, np.full_like(np.asarray(y), x), y),
                2.0,
                extent=1.0,
            )
            assert abs(val) < 1e-7

    def test_piecewise_assembly(self):
        nu, a, x, y = 0, 0.5, 0.3, 0.8
        gb = weights.g_bar(nu, a)
        spec = quad.QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
        gbar_y = quad.integrate_halfline_gaussian(
            lambda u: weights.G_weight(nu, a, u, np.full_like(np.asarray(u), y)), 2.0, spec, extent=1.0
        )
        gbar_x = quad.integrate_halfline_gaussian(
            lambda u: weights.G_weight(nu, a, u, np.full_like(np.asarray(u), x)), 2.0, spec, extent=1.0
        )
        assembled = (
            weights.G_weight(nu, a, x, y)
            - weights.g_weight(nu, a, x) * gbar_y / gb
            + weights.g_weight(nu, a, y) * gbar_x / gb
        )
        assert abs(weights.H_weight(nu, a, x, y) - assembled) < 1e-8


class TestContinuation:
    def test_weights_real_and_finite(self):
        assert np.isfinite(weights.g_weight(0, 1.5, 0.7))
        assert np.isfinite(weights.G_weight(0, 1.5, 0.3, 0.8))
        assert np.isfinite(weights.G_weight(1, 1.5, 0.3, 0.8))

    def test_antisymmetry_persists(self):
        assert weights.G_weight(0, 1.5, 0.3, 0.8) == -weights.G_weight(0, 1.5, 0.8, 0.3)

    def test_a_equal_one_excluded(self):
        with pytest.raises(DomainError):
            weights.g_weight(0, 1.0, 0.5)
        with pytest.raises(DomainError):
            weights.G_weight(0, 1.0, 0.5, 0.7)

    def test_continuity_across_one(self):
        # the two branches approach one another near a = 1
        below = weights.g_weight(0, 1.0 - 1e-7, 0.7)
        above = weights.g_weight(0, 1.0 + 1e-7, 0.7)
        assert abs(below - above) < 1e-8
