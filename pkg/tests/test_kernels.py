import math

import numpy as np
import pytest

from rmtcross import kernels, quad, sop, weights
from rmtcross.errors import DomainError


class TestTransforms:
    def test_bar_of_unity_is_minus_gbar(self):
        for nu in (0, 1):
            v = kernels.transform_bar(sop.SqPolynomial((1.0,)), nu, 0.5, 0.7)
            assert abs(v + weights.G_bar(nu, 0.5, 0.7)) < 1e-8

    def test_tilde_expansion_matches_direct(self):
        # ptilde = pbar - g(x)/gbar * int p Gbar + Gbar(x)/gbar * int p g
        nu, a, x = 0, 0.5, 0.5
        p1 = sop.p_poly(1, nu, a)
        direct = kernels.transform_tilde(p1, nu, a, x)
        nd, wt = quad.composite_nodes(quad.panel_edges(0.0, 7.0, 0.25))
        pv = p1.eval_x(nd)
        expanded = (
            kernels.transform_bar(p1, nu, a, x)
            - weights.g_weight(nu, a, x) / weights.g_bar(nu, a) * float(np.dot(wt * weights.G_bar(nu, a, nd), pv))
            + weights.G_bar(nu, a, x) / weights.g_bar(nu, a) * float(np.dot(wt * weights.g_weight(nu, a, nd), pv))
        )
        assert abs(direct - expanded) < 1e-8

    def test_tilde_two_tolerance(self):
        nu, a, x = 0, 0.5, 0.5
        p1 = sop.p_poly(1, nu, a)
        v1 = kernels.transform_tilde(p1, nu, a, x)
        spec = quad.QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
        v2 = quad.integrate_halfline_gaussian(
            lambda y: weights.H_weight(nu, a, np.full_like(np.asarray(y), x), y) * p1.eval_x(y),
            2.0, spec, extent=1.0,
        )
        assert abs(v1 - v2) < 1e-10

    def test_decay_envelope(self):
        nu, a = 1, 0.5
        p1 = sop.p_poly(1, nu, a)
        assert abs(kernels.transform_tilde(p1, nu, a, 6.0)) < 1e-20


class TestKernelSlice:
    def test_n1_trivial_structure(self):
        for nu in (0, 1):
            ks = kernels.kernel_slice(1, nu, 0.5, 0.4, 1.1)
            assert ks.I == 0.0
            assert abs(ks.S_xy - weights.g_weight(nu, 0.5, 1.1) / weights.g_bar(nu, 0.5)) < 1e-12
            assert abs(ks.D - weights.H_weight(nu, 0.5, 0.4, 1.1)) < 1e-9

    def test_antisymmetry(self):
        ks = kernels.kernel_slice(4, 0, 0.5, 0.4, 1.1)
        ks2 = kernels.kernel_slice(4, 0, 0.5, 1.1, 0.4)
        assert abs(ks.I + ks2.I) < 1e-9
        assert abs(ks.D + ks2.D) < 1e-9
        assert ks.S_xy == ks2.S_yx

    def test_diagonal_zero(self):
        ks = kernels.kernel_slice(3, 1, 0.5, 0.8, 0.8)
        assert ks.I == 0.0 and abs(ks.D) < 1e-15


class TestDensity:
    def test_n1_reduction_all_a(self):
        lam = np.linspace(0.0, 3.0, 13)
        ref = 2.0 * math.sqrt(2.0 / math.pi) * np.exp(-2.0 * lam * lam)
        for a in (0.2, 0.5, 0.9):
            assert np.abs(kernels.density_R1(1, 0, a, lam) - ref).max() < 1e-13

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_normalization(self, n):
        nd, wt = quad.composite_nodes(np.linspace(0.0, 6.5, 40))
        for nu in (0, 1):
            val = float(np.dot(wt, kernels.density_R1(n, nu, 0.5, nd)))
            assert abs(val - n) < 1e-6

    def test_zero_mode_repulsion(self):
        assert kernels.density_R1(3, 1, 0.5, 0.0) == 0.0
        assert kernels.density_R1(3, 1, 0.5, 1e-3) < 1e-4

    def test_positivity_grid(self):
        lam = np.linspace(0.0, 4.0, 101)
        for (n, nu, a) in ((4, 0, 0.9), (5, 1, 0.2), (6, 0, 0.5)):
            assert np.all(kernels.density_R1(n, nu, a, lam) >= 0.0)

    def test_gauge_independence(self):
        lam = np.linspace(0.05, 2.5, 9)
        base = kernels.density_R1(4, 1, 0.5, lam)
        for ct in (-1.0, 1.0):
            assert np.abs(kernels.density_R1(4, 1, 0.5, lam, c_tilde=ct) - base).max() < 1e-10

    def test_n_cap(self):
        with pytest.raises(DomainError):
            kernels.density_R1(17, 0, 0.5, 1.0)

    def test_continuation_gate(self):
        with pytest.raises(DomainError):
            kernels.density_R1(2, 0, 1.3, 1.0)
        # experimental flag opens the continued branch
        ctx = kernels.KernelContext(2, 0, 1.3, experimental_continuation=True)
        nd, wt = quad.composite_nodes(np.linspace(0.0, 8.0, 48))
        val = float(np.dot(wt, ctx.density(nd)))
        assert abs(val - 2.0) < 1e-3  # no accuracy claims; normalization sanity only


class TestCorrelations:
    def test_k1_is_density(self):
        for (n, nu) in ((2, 0), (3, 1)):
            x = 0.9
            assert abs(kernels.corr_Rk(n, nu, 0.5, [x]) - kernels.density_R1(n, nu, 0.5, x)) < 1e-12

    def test_k2_matches_closed_form(self):
        for (n, nu, a) in ((2, 0, 0.5), (3, 1, 0.5), (4, 0, 0.9)):
            v1 = kernels.corr_Rk(n, nu, a, [0.7, 1.3])
            v2 = kernels.corr_R2(n, nu, a, 0.7, 1.3)
            assert abs(v1 - v2) < 1e-10

    def test_coincident_points_vanish(self):
        assert abs(kernels.corr_Rk(3, 0, 0.5, [0.7, 0.7, 1.2])) < 1e-8
        assert abs(kernels.corr_R2(4, 1, 0.5, 0.9, 0.9)) < 1e-8

    def test_r2_symmetry(self):
        v1 = kernels.corr_R2(3, 0, 0.5, 0.6, 1.4)
        v2 = kernels.corr_R2(3, 0, 0.5, 1.4, 0.6)
        assert abs(v1 - v2) < 1e-10

    def test_k_exceeds_n(self):
        with pytest.raises(DomainError):
            kernels.corr_Rk(2, 0, 0.5, [0.5, 1.0, 1.5])

    def test_marginalization_r3_to_r2(self):
        # int R3(x, y, .) = (n-2) R2(x, y) at n = 3
        n, nu, a = 3, 1, 0.5
        x, y = 0.6, 1.3
        nd, wt = quad.composite_nodes(np.linspace(0.0, 6.5, 34))
        vals = np.array([kernels.corr_Rk(n, nu, a, [x, y, z]) for z in nd])
        lhs = float(np.dot(wt, vals))
        rhs = (n - 2) * kernels.corr_R2(n, nu, a, x, y)
        assert abs(lhs - rhs) < 1e-5


class TestSmallest:
    def test_n1_terminates(self):
        v = kernels.smallest_p1_truncated(1, 0, 0.5, 0.4)
        assert v.valid and abs(v.value - kernels.density_R1(1, 0, 0.5, 0.4)) < 1e-12

    def test_zero_at_origin_nu1(self):
        assert kernels.smallest_p1_truncated(4, 1, 0.5, 0.0).value == 0.0

    def test_breakdown_flagged(self):
        v = kernels.smallest_p1_truncated(4, 0, 0.1, 0.9)
        assert v.value < 0.0 and not v.valid

    def test_order_one(self):
        v = kernels.smallest_p1_truncated(3, 0, 0.5, 0.3, order=1)
        assert abs(v.value - kernels.density_R1(3, 0, 0.5, 0.3)) < 1e-12

    def test_chgoe_proxy_near_mode(self):
        # near the nu=1 mode s = 1/(2 sqrt(n)), the truncated expansion at
        # a ~ 0 matches the exact chGOE law
        n, s = 4, 0.25
        v = kernels.smallest_p1_truncated(n, 1, 1e-3, s)
        exact = kernels.smallest_exact_chgoe(n, 1, s)
        assert abs(v.value - exact) < 2e-2


class TestReferenceDensities:
    def test_chgoe_normalization(self):
        nd, wt = quad.composite_nodes(np.linspace(0.0, 6.5, 40))
        for (n, nu) in ((2, 0), (4, 1)):
            assert abs(float(np.dot(wt, kernels.density_chgoe_ref(n, nu, nd))) - n) < 1e-5

    def test_chgoe_odd_n_rejected(self):
        with pytest.raises(DomainError):
            kernels.density_chgoe_ref(3, 0, 1.0)

    def test_chgoe_zero_at_origin(self):
        assert kernels.density_chgoe_ref(4, 1, 0.0) == 0.0

    def test_gaoe_normalization(self):
        nd, wt = quad.composite_nodes(np.linspace(0.0, 6.5, 40))
        for (n, nu) in ((1, 0), (3, 1), (5, 0)):
            assert abs(float(np.dot(wt, kernels.density_gaoe_ref(n, nu, nd))) - n) < 1e-8

    def test_gaoe_zero_at_origin(self):
        assert kernels.density_gaoe_ref(3, 1, 0.0) == 0.0

    def test_limit_convergence(self):
        grid = np.linspace(0.0, 3.0, 61)
        ref = kernels.density_chgoe_ref(4, 0, grid)
        assert np.abs(kernels.density_R1(4, 0, 1e-3, grid) - ref).max() < 5e-3
        ref = kernels.density_gaoe_ref(2, 0, grid)
        assert np.abs(kernels.density_R1(2, 0, 1.0 - 1e-6, grid) - ref).max() < 1e-3


class TestSmallestExact:
    def test_nu1_normalized(self):
        nd, wt = quad.composite_nodes(np.linspace(0.0, 4.0, 40))
        for n in (1, 3, 4):
            assert abs(float(np.dot(wt, kernels.smallest_exact_chgoe(n, 1, nd))) - 1.0) < 1e-12

    def test_nu1_mode(self):
        s = np.linspace(0.2, 0.3, 401)
        v = kernels.smallest_exact_chgoe(4, 1, s)
        assert abs(s[v.argmax()] - 0.25) < 1e-3

    def test_n1_reductions(self):
        s = 0.7
        assert abs(
            kernels.smallest_exact_chgoe(1, 0, s) - math.sqrt(8.0 / math.pi) * math.exp(-2.0 * s * s)
        ) < 1e-12

    def test_nu0_normalized(self):
        nd, wt = quad.composite_nodes(np.linspace(0.0, 4.0, 40))
        for n in (2, 4):
            assert abs(float(np.dot(wt, kernels.smallest_exact_chgoe(n, 0, nd))) - 1.0) < 1e-7
