import numpy as np
import pytest

from rmtcross import linalg
from rmtcross.errors import DimensionError, ParityError, SizeLimitError


def charpoly_coeffs(m):
    """Characteristic polynomial coefficients by Faddeev-LeVerrier (no eigensolver)."""
    n = m.shape[0]
    coeffs = [1.0]
    mk = np.array(m, dtype=float)
    for k in range(1, n + 1):
        c = -np.trace(mk) / k
        coeffs.append(c)
        mk = m @ (mk + c * np.eye(n))
    return np.array(coeffs)


def random_antisym(rng, n):
    a = rng.standard_normal((n, n))
    return a - a.T


class TestSymEigen:
    def test_identity(self):
        w, q = linalg.sym_eigen(np.eye(3))
        assert np.allclose(w, 1.0)
        assert np.allclose(q @ q.T, np.eye(3))

    def test_already_diagonal(self):
        w, _ = linalg.sym_eigen(np.diag([2.0, -1.0]))
        assert np.allclose(w, [-1.0, 2.0])

    def test_against_charpoly_roots(self):
        rng = np.random.default_rng(7)
        s = rng.standard_normal((6, 6))
        s = s + s.T
        w, q = linalg.sym_eigen(s)
        roots = np.sort(np.roots(charpoly_coeffs(s)).real)
        assert np.abs(w - roots).max() < 1e-9

    def test_reconstruction_bound(self):
        rng = np.random.default_rng(3)
        for n in (2, 5, 12):
            s = rng.standard_normal((n, n))
            s = s + s.T
            w, q = linalg.sym_eigen(s)
            err = np.abs(q @ np.diag(w) @ q.T - s).max()
            assert err <= 1e-10 * np.abs(s).max()
            assert np.all(np.diff(w) >= 0)

    def test_rejects_nonsquare(self):
        with pytest.raises(DimensionError):
            linalg.sym_eigen(np.ones((2, 3)))

    def test_rejects_asymmetric(self):
        with pytest.raises(DimensionError):
            linalg.sym_eigen(np.array([[0.0, 1.0], [0.5, 0.0]]))


class TestSingularValues:
    def test_single_block(self):
        m = np.array([[0.0, 2.5], [-2.5, 0.0]])
        sp = linalg.singular_values_antisym(m, 0)
        assert sp.n_pairs == 1
        assert np.allclose(sp.singular_values, [2.5])

    def test_embedded_block_with_zero_mode(self):
        m = np.zeros((3, 3))
        m[0, 1] = 1.7
        m[1, 0] = -1.7
        sp = linalg.singular_values_antisym(m, 1)
        assert sp.nu_zero_modes == 1
        assert np.allclose(sp.singular_values, [1.7])

    def test_against_mtm_eigensolve(self):
        rng = np.random.default_rng(11)
        m = random_antisym(rng, 8)
        sp = linalg.singular_values_antisym(m, 0)
        # independent oracle: singular values from M^T M without pairing logic
        sv = np.sqrt(np.sort(np.linalg.eigvalsh(m.T @ m))[::-1])
        assert np.abs(np.sort(sp.singular_values) - np.sort(sv[::2])).max() < 1e-9

    def test_orthogonal_invariance(self):
        rng = np.random.default_rng(5)
        m = random_antisym(rng, 8)
        o, _ = np.linalg.qr(rng.standard_normal((8, 8)))
        s1 = linalg.singular_values_antisym(m, 0).singular_values
        s2 = linalg.singular_values_antisym(o @ m @ o.T, 0).singular_values
        assert np.abs(s1 - s2).max() < 1e-9

    def test_pairing_gap(self):
        rng = np.random.default_rng(17)
        m = random_antisym(rng, 10)
        ev = np.sort(np.linalg.eigvalsh(-m @ m))
        gaps = np.abs(ev[0::2] - ev[1::2]) / np.abs(ev[1::2])
        assert gaps.max() < 1e-8

    def test_parity_mismatch(self):
        with pytest.raises(ParityError):
            linalg.singular_values_antisym(np.zeros((4, 4)), 1)


class TestPfaffian:
    def test_two_by_two(self):
        assert linalg.pfaffian(np.array([[0.0, 3.0], [-3.0, 0.0]])) == 3.0

    def test_block_multiplicativity(self):
        m = np.zeros((4, 4))
        m[0, 1], m[1, 0] = 2.0, -2.0
        m[2, 3], m[3, 2] = -1.5, 1.5
        assert abs(linalg.pfaffian(m) - 2.0 * -1.5) < 1e-14

    def test_textbook_four_by_four(self):
        a, b, c, d, e, f = 1.2, -0.7, 2.1, 0.4, -1.1, 0.9
        m = np.array(
            [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]], dtype=float
        )
        expected = a * f - b * e + c * d
        assert abs(linalg.pfaffian(m) - expected) < 1e-14
        assert abs(linalg.pfaffian_recursive(m) - expected) < 1e-14

    def test_recursive_agreement(self):
        rng = np.random.default_rng(23)
        for n in (2, 4, 6, 8):
            m = random_antisym(rng, n)
            pf = linalg.pfaffian(m)
            rec = linalg.pfaffian_recursive(m)
            assert abs(pf - rec) <= 1e-10 * abs(rec)

    def test_square_is_determinant(self):
        rng = np.random.default_rng(29)
        for n in (4, 6, 10, 14):
            m = random_antisym(rng, n)
            pf = linalg.pfaffian(m)
            det = np.linalg.det(m)
            assert abs(pf * pf - det) <= 1e-8 * abs(det)

    def test_odd_dimension(self):
        m = np.zeros((3, 3))
        with pytest.raises(ParityError):
            linalg.pfaffian(m)
        assert linalg.pfaffian(m, allow_odd=True) == 0.0

    def test_recursive_size_cap(self):
        with pytest.raises(SizeLimitError):
            linalg.pfaffian_recursive(np.zeros((12, 12)))


def test_vandermonde_sq():
    assert linalg.vandermonde_sq([1.0, 2.0]) == 3.0
    assert linalg.vandermonde_sq([0.7]) == 1.0
    assert linalg.vandermonde_sq([]) == 1.0
    assert abs(linalg.vandermonde_sq([1.0, 2.0, 3.0]) - 120.0) < 1e-12
