"""Joint eigenvalue density at small n and brute-force correlation oracles.

jpdf_eval assembles C * Vandermonde * Pfaffian directly from the weight
functions; corr_Rk_bruteforce integrates it numerically over the free
arguments.  Agreement of those integrals with the kernel formulas validates
the whole transform/kernel chain against the defining density.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import weights
from .errors import DomainError
from .quad import composite_nodes, panel_edges
from .special import ln_gamma

_ORACLE_MAX_N = 6
_BRUTE_MAX_N = 3


@dataclass(frozen=True)
class JpdfValue:
    log_constant: float
    vandermonde_part: float
    pfaffian_part: float
    value: float


def jpdf_const(n, nu, a):
    """log of the normalization constant C_{n, nu}."""
    if not 0.0 < a < 1.0:
        raise DomainError(f"jpdf_const requires 0 < a < 1, got {a}")
    if nu not in (0, 1):
        raise DomainError(f"nu must be 0 or 1, got {nu}")
    val = (
        0.5 * n * (3 + n + nu) * math.log(2.0)
        - n * math.log(a)
        - 0.5 * n * (n + nu) * math.log1p(-a * a)
    )
    for j in range(n):
        val -= ln_gamma((j + 3) / 2.0) + ln_gamma((j + nu + 1) / 2.0)
    return val


def _vandermonde_sq_values(lam):
    out = 1.0
    for i in range(len(lam) - 1):
        out *= np.prod(lam[i + 1 :] ** 2 - lam[i] ** 2)
    return float(out)


def _pf_part(n, nu, a, lam):
    """Pfaffian factor of the jpdf: Pf[G] for even n, bordered for odd n."""
    from .linalg import pfaffian

    if n == 1:
        return float(weights.g_weight(nu, a, lam[0]))
    gmat = weights.G_weight(nu, a, lam[:, None], lam[None, :])
    if n % 2 == 0:
        mat = gmat
    else:
        gvec = weights.g_weight(nu, a, lam)
        mat = np.zeros((n + 1, n + 1))
        mat[:n, :n] = gmat
        mat[:n, n] = gvec
        mat[n, :n] = -gvec
    return pfaffian(0.5 * (mat - mat.T))


def jpdf_eval(n, nu, a, lam):
    """Joint density of the n singular values at the point lam (unordered)."""
    if n < 1 or n > _ORACLE_MAX_N:
        raise DomainError(f"jpdf_eval supports 1 <= n <= {_ORACLE_MAX_N}")
    lam = np.asarray(lam, dtype=float)
    if lam.size != n:
        raise DomainError(f"expected {n} eigenvalues, got {lam.size}")
    if np.any(lam <= 0.0):
        raise DomainError("eigenvalues must be positive")
    logc = jpdf_const(n, nu, a)
    if np.unique(lam).size != n:
        warnings.warn("coincident eigenvalues: density vanishes", stacklevel=2)
        return JpdfValue(logc, 0.0, _pf_part(n, nu, a, lam), 0.0)
    vand = _vandermonde_sq_values(lam)
    pf = _pf_part(n, nu, a, lam)
    return JpdfValue(logc, vand, pf, math.exp(logc) * vand * pf)


def _grid(nu_points=36, cut=6.0):
    return composite_nodes(panel_edges(0.0, cut, cut / nu_points))


def jpdf_norm_check(n, nu, a, cut=6.0, width=0.18):
    """Full normalization integral of the jpdf over [0, inf)^n (n <= 3)."""
    if n > _BRUTE_MAX_N:
        raise DomainError(f"normalization check supports n <= {_BRUTE_MAX_N}")
    nd, wt = composite_nodes(panel_edges(0.0, cut, width))
    c = math.exp(jpdf_const(n, nu, a))
    if n == 1:
        return c * float(np.dot(wt, weights.g_weight(nu, a, nd)))
    gmat = weights.G_weight(nu, a, nd[:, None], nd[None, :])
    t2 = nd * nd
    if n == 2:
        integ = (t2[None, :] - t2[:, None]) * gmat
        return c * float(wt @ integ @ wt)
    gvec = weights.g_weight(nu, a, nd)
    total = 0.0
    # chunk the z axis of the (x, y, z) tensor assembly
    for z0 in range(0, nd.size, 64):
        zsl = slice(z0, min(z0 + 64, nd.size))
        x = t2[:, None, None]
        y = t2[None, :, None]
        z = t2[None, None, zsl]
        vand = (y - x) * (z - x) * (z - y)
        pf = (
            gmat[:, :, None] * gvec[None, None, zsl]
            - gmat[:, zsl][:, None, :] * gvec[None, :, None]
            + gmat[:, zsl][None, :, :] * gvec[:, None, None]
        )
        total += np.einsum("i,j,k,ijk->", wt, wt, wt[zsl], vand * pf)
    return c * total


def corr_Rk_bruteforce(n, k, nu, a, points, cut=6.0, width=0.18):
    """k-point correlation from the jpdf: n!/(n-k)! integrals over n-k args.

    Oracle-grade nested quadrature; limited to n <= 3 (the n=3, k=1 case is
    a full 2D integral per evaluation point and is the cost ceiling).
    """
    if n > _BRUTE_MAX_N:
        raise DomainError(f"brute-force correlations support n <= {_BRUTE_MAX_N}")
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    pts = np.asarray(points, dtype=float)
    if pts.size != k:
        raise DomainError(f"expected {k} points")
    combi = math.exp(ln_gamma(n + 1.0) - ln_gamma(n - k + 1.0))
    c = math.exp(jpdf_const(n, nu, a))
    if k == n:
        return combi * jpdf_eval(n, nu, a, pts).value
    nd, wt = composite_nodes(panel_edges(0.0, cut, width))
    t2 = nd * nd
    gvec = weights.g_weight(nu, a, nd)
    if n == 2 and k == 1:
        x = pts[0]
        integ = (t2 - x * x) * weights.G_weight(nu, a, x, nd)
        return combi * c * float(np.dot(wt, integ))
    if n == 3 and k == 2:
        x, y = pts
        gxy = weights.G_weight(nu, a, x, y)
        gxz = weights.G_weight(nu, a, x, nd)
        gyz = weights.G_weight(nu, a, y, nd)
        gx = weights.g_weight(nu, a, x)
        gy = weights.g_weight(nu, a, y)
        pf = gxy * gvec - gxz * gy + gyz * gx
        vand = (y * y - x * x) * (t2 - x * x) * (t2 - y * y)
        return combi * c * float(np.dot(wt, vand * pf))
    # n == 3, k == 1: two-dimensional integral
    warnings.warn("n=3, k=1 brute force is a full 2D quadrature per point", stacklevel=2)
    x = pts[0]
    gx = weights.g_weight(nu, a, x)
    gxy = weights.G_weight(nu, a, x, nd)
    gmat = weights.G_weight(nu, a, nd[:, None], nd[None, :])
    pf = gxy[:, None] * gvec[None, :] - gxy[None, :] * gvec[:, None] + gmat * gx
    vand = (t2[:, None] - x * x) * (t2[None, :] - x * x) * (t2[None, :] - t2[:, None])
    return combi * c * float(wt @ (vand * pf) @ wt)


def selberg(n, kappa, beta):
    """log of the Selberg integral over [0, inf)^n with |Vandermonde|^beta."""
    if beta <= 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    if kappa <= -1.0:
        raise DomainError(f"kappa must exceed -1, got {kappa}")
    val = (n * (kappa + 1) + 0.5 * beta * n * (n - 1)) * math.log(2.0 / beta)
    for j in range(n):
        val += (
            ln_gamma(1.0 + 0.5 * beta * (j + 1))
            + ln_gamma(1.0 + kappa + 0.5 * beta * j)
            - ln_gamma(1.0 + 0.5 * beta)
        )
    return val
