"""Dense real linear algebra at desk scale (N <= 64).

Provides the cyclic Jacobi symmetric eigensolver, singular values of real
antisymmetric matrices, a sign-correct Pfaffian via Parlett-Reid
tridiagonalization with partial pivoting, the O(N!!) recursive Pfaffian kept
as an oracle, and the squared-variable Vandermonde product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParityError, SizeLimitError

_JACOBI_SWEEPS = 100
_JACOBI_TOL = 1e-14  # off-diagonal Frobenius norm, relative to ||S||_F


@dataclass(frozen=True)
class SpectrumPairs:
    """Nonnegative singular values of an antisymmetric matrix.

    The spectrum of a real antisymmetric N x N matrix consists of pairs
    +-i*lambda_j plus nu = N mod 2 exact zero modes.
    """

    n_pairs: int
    singular_values: np.ndarray  # descending
    nu_zero_modes: int


def _square_matrix(m, name="matrix"):
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def check_antisymmetric(m, tol=1e-12):
    """Validate entries[i,j] = -entries[j,i] within tol (relative); returns
    the exactly antisymmetrized array."""
    a = _square_matrix(m)
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    if np.abs(a + a.T).max(initial=0.0) > tol * scale:
        raise DimensionError("matrix is not antisymmetric")
    return 0.5 * (a - a.T)


def sym_eigen(s):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, orthogonal eigenbasis Q) with
    S = Q diag(w) Q^T.  Convergence: off-diagonal Frobenius norm below
    1e-14 * ||S||_F, or 100 sweeps.
    """
    a = _square_matrix(s, "S")
    n = a.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    scale = max(np.abs(a).max(), 1e-300)
    if np.abs(a - a.T).max() > 1e-12 * scale:
        raise DimensionError("input is not symmetric within 1e-12 relative")
    a = 0.5 * (a + a.T)
    q = np.eye(n)
    target = _JACOBI_TOL * np.linalg.norm(a)
    for _ in range(_JACOBI_SWEEPS):
        off = np.sqrt(np.sum(np.square(a - np.diag(np.diag(a)))))
        if off <= target:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                if abs(apq) <= 1e-300:
                    a[p, r] = a[r, p] = 0.0
                    continue
                theta = 0.5 * (a[r, r] - a[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta != 0.0 else 1.0
                c = 1.0 / np.hypot(t, 1.0)
                sn = t * c
                rot = np.array([[c, sn], [-sn, c]])
                a[:, [p, r]] = a[:, [p, r]] @ rot
                a[[p, r], :] = rot.T @ a[[p, r], :]
                a[p, r] = a[r, p] = 0.0
                q[:, [p, r]] = q[:, [p, r]] @ rot
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], q[:, order]


def singular_values_antisym(m, nu):
    """Singular values of a real antisymmetric matrix with nu zero modes.

    Works through the symmetric PSD matrix -M^2: its eigenvalues come in
    near-degenerate pairs lambda_j^2 (plus nu exact zeros); each pair is
    averaged and square-rooted.
    """
    a = check_antisymmetric(m)
    n_dim = a.shape[0]
    if nu not in (0, 1) or n_dim % 2 != nu:
        raise ParityError(f"nu={nu} inconsistent with matrix dimension {n_dim}")
    n_pairs = (n_dim - nu) // 2
    if n_pairs == 0:
        return SpectrumPairs(0, np.empty(0), nu)
    w, _ = sym_eigen(-a @ a)
    w = np.clip(w[nu:], 0.0, None)
    lam = np.sqrt(0.5 * (w[0::2] + w[1::2]))
    return SpectrumPairs(n_pairs, lam[::-1].copy(), nu)


def pfaffian(m, allow_odd=False):
    """Pfaffian of a real antisymmetric matrix.

    Parlett-Reid tridiagonalization with partial pivoting; the sign is
    tracked through the row/column interchanges.  Odd dimension raises
    unless allow_odd=True, in which case 0.0 is returned by convention.
    """
    a = check_antisymmetric(m).copy()
    n = a.shape[0]
    if n % 2:
        if allow_odd:
            return 0.0
        raise ParityError("Pfaffian of an odd-dimensional matrix is 0; pass allow_odd=True to get it")
    if n == 0:
        return 1.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if kp != k + 1:
            a[[k + 1, kp], k:] = a[[kp, k + 1], k:]
            a[k:, [k + 1, kp]] = a[k:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0.0:
            return 0.0
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            w = a[k + 2:, k + 1]
            a[k + 2:, k + 2:] += np.outer(tau, w) - np.outer(w, tau)
    return pf


def pfaffian_recursive(m):
    """Pfaffian by Laplace-type expansion along the first row (oracle, N <= 10)."""
    a = check_antisymmetric(m)
    n = a.shape[0]
    if n % 2:
        raise ParityError("recursive Pfaffian needs even dimension")
    if n > 10:
        raise SizeLimitError("recursive Pfaffian limited to N <= 10")
    return _pf_expand(a)


def _pf_expand(a):
    n = a.shape[0]
    if n == 0:
        return 1.0
    if n == 2:
        return a[0, 1]
    total = 0.0
    rest = np.arange(1, n)
    for idx, k in enumerate(rest):
        keep = np.delete(rest, idx)
        sub = a[np.ix_(keep, keep)]
        total += (-1.0) ** idx * a[0, k] * _pf_expand(sub)
    return total


def vandermonde_sq(lam):
    """prod_{a<b} (lam_b^2 - lam_a^2); empty and single inputs give 1."""
    v = np.asarray(lam, dtype=float)
    t = v * v
    out = 1.0
    for i in range(len(t) - 1):
        out *= np.prod(t[i + 1:] - t[i])
    return float(out)
