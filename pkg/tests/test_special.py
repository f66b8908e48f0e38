import math

import numpy as np
import pytest
import scipy.special as sp

from rmtcross import quad, special
from rmtcross.errors import DomainError, RangeError


class TestErfFamily:
    def test_erf_zero_and_saturation(self):
        assert special.erf(0.0) == 0.0
        assert abs(special.erf(10.0) - 1.0) < 1e-15

    def test_erf_against_quadrature(self):
        oracle = 2.0 / math.sqrt(math.pi) * quad.integrate_finite(
            lambda t: np.exp(-t * t), 0.0, 1.0
        )
        assert abs(special.erf(1.0) - oracle) < 1e-12

    def test_erfc_complement(self):
        for x in (-4.0, -0.3, 0.0, 1.7, 5.5):
            assert abs(special.erfc(x) - (1.0 - special.erf(x))) < 1e-14

    def test_erfi_odd(self):
        assert special.erfi(0.0) == 0.0
        for x in (0.3, 2.0, 11.0):
            assert special.erfi(-x) == -special.erfi(x)

    def test_erfi_matches_asymptotic_at_6(self):
        # independent continuation check: large-x expansion vs series
        series = special.erfi(6.0)
        asym = special._erfi_asymptotic(6.0)
        assert abs(series / asym - 1.0) < 1e-10

    def test_erfi_against_scipy(self):
        xs = np.array([0.1, 1.0, 3.0, 3.0001, 7.5, 19.0])
        mine = special.erfi(xs)
        assert np.abs(mine / sp.erfi(xs) - 1.0).max() < 1e-13

    def test_erfi_bounded_product(self):
        # erfi(x) exp(-x^2) stays bounded across the switch region
        xs = np.linspace(0.1, 20, 200)
        vals = special.erfi(xs) * np.exp(-xs * xs)
        assert np.all(vals < 0.65)

    def test_erfi_range_guard(self):
        with pytest.raises(RangeError):
            special.erfi(27.0)
        with pytest.raises(RangeError):
            special.erfi(45.0)


class TestHermite:
    def test_low_orders(self):
        assert special.hermite_h(0, 0.77) == 1.0
        assert special.hermite_h(1, 2.0) == 4.0
        assert special.hermite_h(3, 1.0) == -4.0

    def test_orthogonality_spot_check(self):
        for m in range(0, 9, 2):
            for n in range(m, 9, 3):
                val = quad.integrate_finite(
                    lambda x: special.hermite_h(m, x) * special.hermite_h(n, x) * np.exp(-x * x),
                    -9.0,
                    9.0,
                )
                if m == n:
                    exact = 2.0 ** n * math.factorial(n) * math.sqrt(math.pi)
                    assert abs(val / exact - 1.0) < 1e-8
                else:
                    assert abs(val) < 1e-8

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            special.hermite_h(201, 0.0)


class TestLaguerre:
    def test_low_orders(self):
        assert special.laguerre(0, 2.0, 5.0) == 1.0
        assert abs(special.laguerre(1, 0.0, 0.3) - 0.7) < 1e-15
        assert special.laguerre(2, 1.0, 0.0) == 3.0

    def test_index_identity(self):
        # L_j^(nu-1)(z) = L_j^(nu)(z) - L_{j-1}^(nu)(z)
        zs = np.linspace(0.0, 20.0, 41)
        for j in range(1, 11):
            lhs = special.laguerre(j, 0.0, zs)
            rhs = special.laguerre(j, 1.0, zs) - special.laguerre(j - 1, 1.0, zs)
            assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, np.abs(lhs).max())

    def test_against_scipy(self):
        zs = np.linspace(0.0, 15.0, 31)
        for (k, al) in ((3, 0), (5, 1), (8, 2)):
            assert np.abs(special.laguerre(k, al, zs) - sp.eval_genlaguerre(k, al, zs)).max() < 1e-10


class TestGaussianMoment:
    def test_zeroth(self):
        assert abs(special.gaussian_moment(0, 1.0) - math.sqrt(math.pi)) < 1e-15

    def test_first_closed_form(self):
        assert abs(special.gaussian_moment(1, 2.0) - math.sqrt(math.pi) / (2.0 * 2.0 ** 1.5)) < 1e-16

    def test_against_quadrature(self):
        for (k, c) in ((1, 2.0), (2, 1.0), (5, 0.7)):
            oracle = 2.0 * quad.integrate_halfline_gaussian(
                lambda y: y ** (2 * k) * np.exp(-c * y * y), c, extent=3.0 * k
            )
            assert abs(special.gaussian_moment(k, c) / oracle - 1.0) < 1e-11
        assert abs(special.gaussian_moment(2, 1.0) - 3.0 * math.sqrt(math.pi) / 4.0) < 1e-15


class TestLnGamma:
    def test_values(self):
        assert special.ln_gamma(1.0) == 0.0
        assert abs(special.ln_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-15

    def test_recurrence_from_half(self):
        # Gamma(7.5) = 6.5 * 5.5 * ... * 0.5 * Gamma(0.5)
        acc = math.lgamma(0.5)
        for k in range(7):
            acc += math.log(0.5 + k)
        assert abs(special.ln_gamma(7.5) - acc) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            special.ln_gamma(0.0)


class TestTricomiU:
    def test_reduction_identity(self):
        # U(a, a+1, z) = z^-a
        assert abs(special.tricomi_u(1.0, 2.0, 2.0) - 0.5) < 1e-9

    def test_two_tolerance_agreement(self):
        v1 = special.tricomi_u(1.0, -0.5, 2.0, rel_tol=1e-8)
        v2 = special.tricomi_u(1.0, -0.5, 2.0, rel_tol=1e-11)
        assert abs(v1 / v2 - 1.0) < 1e-7

    def test_against_scipy_hyperu(self):
        for (al, b, z) in ((0.5, -0.5, 0.08), (1.5, -0.5, 2.0), (2.0, -0.5, 0.5), (1.0, -0.5, 4.0)):
            assert abs(special.tricomi_u(al, b, z) / sp.hyperu(al, b, z) - 1.0) < 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            special.tricomi_u(0.0, -0.5, 1.0)
        with pytest.raises(DomainError):
            special.tricomi_u(1.0, -0.5, 0.0)
