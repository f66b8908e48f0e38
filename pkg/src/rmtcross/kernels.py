"""Kernels and correlation functions of the Pfaffian point process.

For a fixed (n, nu, a) the context assembles the skew-orthogonal pairs, the
weight closures and the integral transforms pbar/qbar (even pair count) or
ptilde/qtilde (odd pair count), and exposes the three kernels S, D, I, the
k-point correlation functions, the spectral density, the truncated
smallest-eigenvalue expansion, and the exact reference densities of the two
endpoint ensembles.

Transforms are tabulated per evaluation grid and memoized; for fixed grids
and quadrature settings the tables are bit-reproducible.  Supported pair
counts are n <= 16: beyond that the spread of (1-a^2) powers across the
normalizations h_j exhausts double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import weights
from .errors import DomainError
from .params import TransitionParams
from .quad import composite_nodes
from .special import hermite_h, laguerre, ln_gamma, tricomi_u
from .sop import SqPolynomial, norm_h, p_poly, q_poly

_MAX_PAIRS = 16
_CUT = 8.0


@dataclass(frozen=True)
class KernelSlice:
    """The 2x2 matrix kernel at a point pair (x, y)."""

    I: float
    S_xy: float
    S_yx: float
    D: float
    params: TransitionParams


@dataclass(frozen=True)
class SmallestEigenvalueEstimate:
    """Truncated expansion value for the smallest-eigenvalue density.

    A negative value signals that the truncation has broken down at this
    point; it is reported as-is with valid=False rather than clamped.
    """

    value: float
    order: int
    valid: bool


_context_cache = {}


def kernel_context(n, nu, a, c_tilde=0.0, experimental_continuation=False):
    key = (n, nu, round(float(a), 15), round(float(c_tilde), 15))
    ctx = _context_cache.get(key)
    if ctx is None:
        ctx = KernelContext(n, nu, a, c_tilde, experimental_continuation)
        _context_cache[key] = ctx
    return ctx


class KernelContext:
    """All analytic kernel machinery for one parameter point."""

    def __init__(self, n, nu, a, c_tilde=0.0, experimental_continuation=False):
        if n < 1 or n != int(n):
            raise DomainError(f"pair count n must be a positive integer, got {n}")
        if n > _MAX_PAIRS:
            raise DomainError(
                f"n={n} exceeds the supported range n <= {_MAX_PAIRS} "
                "(the (1-a^2) powers spread across h_j exhausts double precision)"
            )
        if a >= 1.0 and not experimental_continuation:
            raise DomainError(
                "kernels at a >= 1 are gated behind experimental_continuation=True "
                "(no accuracy claims on the continued branch)"
            )
        self.params = TransitionParams(int(n), nu, float(a))
        self.n = int(n)
        self.nu = nu
        self.a = float(a)
        self.c_tilde = float(c_tilde)
        self.even = self.n % 2 == 0
        m = self.n // 2 if self.even else (self.n + 1) // 2
        self.indices = (
            [2 * j for j in range(m)] if self.even else [2 * j - 1 for j in range(1, m)]
        )
        self.p = [p_poly(j, nu, a) for j in self.indices]
        self.q = [q_poly(j, nu, a, c_tilde) for j in self.indices]
        self.h = np.array([self._norm(j) for j in self.indices])
        self.gbar = weights.g_bar(nu, a) if a < 1.0 else None
        # fixed half-line rule for the scalar side integrals of the odd case
        self._ynodes0, self._yweights0 = composite_nodes(self._yedges(0.0))
        if not self.even and a < 1.0:
            g_on = weights.g_weight(nu, a, self._ynodes0)
            gb_on = weights.G_bar(nu, a, self._ynodes0)
            self._int_pg = np.array(
                [np.dot(self._yweights0 * g_on, p.eval_x(self._ynodes0)) for p in self.p]
            )
            self._int_qg = np.array(
                [np.dot(self._yweights0 * g_on, q.eval_x(self._ynodes0)) for q in self.q]
            )
            self._int_pgbar = np.array(
                [np.dot(self._yweights0 * gb_on, p.eval_x(self._ynodes0)) for p in self.p]
            )
            self._int_qgbar = np.array(
                [np.dot(self._yweights0 * gb_on, q.eval_x(self._ynodes0)) for q in self.q]
            )
        self._tf_cache = {}

    def _norm(self, j):
        if self.a < 1.0:
            return norm_h(j, self.nu, self.a)
        # experimental continuation: (1-a^2)^(2j+2+nu) with its real sign
        one = 1.0 - self.a * self.a
        return (
            math.pi
            * self.a ** 2
            * one ** (2 * j + 2 + self.nu)
            * math.exp(ln_gamma(j + 1.0) + ln_gamma(j + self.nu + 1.0))
            / 2.0 ** (4 * j + 2 * self.nu + 7)
        )

    # -- transform tables ---------------------------------------------------

    def _yedges(self, x):
        """Panel edges for the y-integration of a transform at argument x.

        Besides the uniform base grid, edges refine geometrically toward
        y = x and y = 0 where the erf factors of the two-point weight vary
        on the scale 1/gamma.
        """
        gam = weights.gamma_factor(self.a)
        base = 0.4
        minw = min(base, 0.25 / max(gam, 1e-12))
        edges = set(np.linspace(0.0, _CUT, int(round(_CUT / base)) + 1))
        w = minw
        pos = 0.0
        while w < base and pos < _CUT:
            pos += w
            edges.add(pos)
            w *= 2.0
        if minw < base and 0.0 < x < _CUT:
            edges.add(x)
            w = minw
            while w < base:
                if x - w > 0.0:
                    edges.add(x - w)
                if x + w < _CUT:
                    edges.add(x + w)
                w *= 2.0
        return np.array(sorted(edges))

    def _transforms(self, xs):
        """Transform table at the points xs: arrays of p, q, pbar/ptilde,
        qbar/qtilde, g, Gbar values, each shaped like (count, len(xs))."""
        xs = np.asarray(xs, dtype=float)
        key = (xs.shape, hash(xs.tobytes()))
        tab = self._tf_cache.get(key)
        if tab is not None:
            return tab
        flat = xs.ravel()
        rows_nodes = []
        rows_weights = []
        for x in flat:
            nd, wt = composite_nodes(self._yedges(min(x, _CUT)))
            rows_nodes.append(nd)
            rows_weights.append(wt)
        width = max(len(r) for r in rows_nodes)
        ynodes = np.full((flat.size, width), _CUT)
        yweights = np.zeros((flat.size, width))
        for i, (nd, wt) in enumerate(zip(rows_nodes, rows_weights)):
            ynodes[i, : len(nd)] = nd
            yweights[i, : len(wt)] = wt
        gmesh = weights.G_weight(self.nu, self.a, flat[:, None], ynodes)
        wg = yweights * gmesh

        def stack(values):
            return np.array(values).reshape(len(values), flat.size) if values else np.zeros((0, flat.size))

        tab = {
            "x": flat,
            "p": stack([p.eval_x(flat) for p in self.p]),
            "q": stack([q.eval_x(flat) for q in self.q]),
        }
        pbar = stack([np.sum(wg * p.eval_x(ynodes), axis=1) for p in self.p])
        qbar = stack([np.sum(wg * q.eval_x(ynodes), axis=1) for q in self.q])
        if self.even:
            tab["pbar"] = pbar
            tab["qbar"] = qbar
        else:
            g_x = weights.g_weight(self.nu, self.a, flat)
            gb_x = weights.G_bar(self.nu, self.a, flat)
            tab["g"] = np.asarray(g_x, dtype=float).reshape(-1)
            tab["gbar"] = np.asarray(gb_x, dtype=float).reshape(-1)
            if self.p:
                tab["pbar"] = (
                    pbar
                    - self._int_pgbar[:, None] * tab["g"][None, :] / self.gbar
                    + self._int_pg[:, None] * tab["gbar"][None, :] / self.gbar
                )
                tab["qbar"] = (
                    qbar
                    - self._int_qgbar[:, None] * tab["g"][None, :] / self.gbar
                    + self._int_qg[:, None] * tab["gbar"][None, :] / self.gbar
                )
            else:
                tab["pbar"] = pbar
                tab["qbar"] = qbar
        if not self.even and self.a >= 1.0:
            raise DomainError("odd pair counts are not supported on the continued branch")
        self._tf_cache[key] = tab
        return tab

    # -- kernels -------------------------------------------------------------

    def s_matrix(self, ta, tb):
        # Odd pair counts carry the extra rank-one term from the bordered
        # Pfaffian row.  With the bilinear part oriented as p(x) qtilde(y),
        # the jpdf brute-force oracle fixes that term to g(y)/gbar (second
        # argument); only the diagonal, hence the density, is insensitive
        # to the placement.
        out = np.zeros((ta["x"].size, tb["x"].size))
        for c in range(len(self.indices)):
            out += (
                np.outer(ta["p"][c], tb["qbar"][c]) - np.outer(ta["q"][c], tb["pbar"][c])
            ) / self.h[c]
        if not self.even:
            out += tb["g"][None, :] / self.gbar
        return out

    def i_matrix(self, ta, tb):
        out = np.zeros((ta["x"].size, tb["x"].size))
        for c in range(len(self.indices)):
            out += (
                np.outer(ta["q"][c], tb["p"][c]) - np.outer(ta["p"][c], tb["q"][c])
            ) / self.h[c]
        return out

    def d_matrix(self, ta, tb):
        out = np.zeros((ta["x"].size, tb["x"].size))
        for c in range(len(self.indices)):
            out += (
                np.outer(ta["qbar"][c], tb["pbar"][c]) - np.outer(ta["pbar"][c], tb["qbar"][c])
            ) / self.h[c]
        xa = ta["x"][:, None]
        xb = tb["x"][None, :]
        if self.even:
            out += weights.G_weight(self.nu, self.a, xa, xb)
        else:
            out += weights.G_weight(self.nu, self.a, xa, xb)
            out -= ta["g"][:, None] * tb["gbar"][None, :] / self.gbar
            out += tb["g"][None, :] * ta["gbar"][:, None] / self.gbar
        return out

    def density(self, lam):
        lam = np.asarray(lam, dtype=float)
        tab = self._transforms(lam)
        val = np.zeros(lam.size)
        for c in range(len(self.indices)):
            val += (tab["p"][c] * tab["qbar"][c] - tab["q"][c] * tab["pbar"][c]) / self.h[c]
        if not self.even:
            val += tab["g"] / self.gbar
        neg = val < 0.0
        if np.any(val[neg] < -1e-9):
            raise DomainError(
                f"density negative beyond round-off: min {val.min():.3e} "
                "(conditioning breakdown; reduce n or move a away from 1)"
            )
        val[neg] = 0.0
        return val.reshape(lam.shape) if lam.ndim else float(val[0])


def transform_bar(poly, nu, a, x):
    """Integral of poly(y) G_nu(x, y) over y in [0, inf)."""
    ctx = kernel_context(2, nu, a)
    nd, wt = composite_nodes(ctx._yedges(min(float(x), _CUT)))
    return float(np.dot(wt * weights.G_weight(nu, a, float(x), nd), poly.eval_x(nd)))


def transform_tilde(poly, nu, a, x):
    """Integral of poly(y) H_nu(x, y) over y in [0, inf)."""
    ctx = kernel_context(2, nu, a)
    nd, wt = composite_nodes(ctx._yedges(min(float(x), _CUT)))
    return float(np.dot(wt * weights.H_weight(nu, a, float(x), nd), poly.eval_x(nd)))


def kernel_slice(n, nu, a, x, y, c_tilde=0.0):
    """The 2x2 kernel (I, S(x,y), S(y,x), D) at one point pair."""
    ctx = kernel_context(n, nu, a, c_tilde)
    tab = ctx._transforms(np.array([float(x), float(y)]))
    return KernelSlice(
        I=float(ctx.i_matrix(tab, tab)[0, 1]),
        S_xy=float(ctx.s_matrix(tab, tab)[0, 1]),
        S_yx=float(ctx.s_matrix(tab, tab)[1, 0]),
        D=float(ctx.d_matrix(tab, tab)[0, 1]),
        params=ctx.params,
    )


def density_R1(n, nu, a, lam, c_tilde=0.0):
    """Spectral density R_1(lambda) = S_n(lambda, lambda); array-capable."""
    return kernel_context(n, nu, a, c_tilde).density(lam)


def corr_Rk(n, nu, a, points, c_tilde=0.0):
    """k-point correlation function as a Pfaffian of the 2x2 kernel blocks.

    Row ordering per point: (I-row, S-row); the (2,1) entry of each
    off-diagonal block is -S(y, x), making the 2k x 2k matrix antisymmetric.
    """
    from .linalg import pfaffian

    pts = np.asarray(points, dtype=float)
    k = pts.size
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    ctx = kernel_context(n, nu, a, c_tilde)
    tab = ctx._transforms(pts)
    smat = ctx.s_matrix(tab, tab)
    imat = ctx.i_matrix(tab, tab)
    dmat = ctx.d_matrix(tab, tab)
    big = np.zeros((2 * k, 2 * k))
    for i in range(k):
        for j in range(k):
            big[2 * i, 2 * j] = imat[i, j]
            big[2 * i, 2 * j + 1] = smat[i, j]
            big[2 * i + 1, 2 * j] = -smat[j, i]
            big[2 * i + 1, 2 * j + 1] = dmat[i, j]
    big = 0.5 * (big - big.T)  # remove diagonal round-off exactly
    return pfaffian(big)


def corr_R2(n, nu, a, x, y, c_tilde=0.0):
    """Two-point function S(x,x)S(y,y) - I(x,y)D(x,y) - S(x,y)S(y,x)."""
    ctx = kernel_context(n, nu, a, c_tilde)
    tab = ctx._transforms(np.array([float(x), float(y)]))
    smat = ctx.s_matrix(tab, tab)
    imat = ctx.i_matrix(tab, tab)
    dmat = ctx.d_matrix(tab, tab)
    return smat[0, 0] * smat[1, 1] - imat[0, 1] * dmat[0, 1] - smat[0, 1] * smat[1, 0]


def smallest_p1_truncated(n, nu, a, s, order=2, c_tilde=0.0):
    """Truncated expansion of the smallest-eigenvalue density at point s.

    order=1 keeps R_1(s); order=2 subtracts the integral of R_2(s, x) over
    x in [0, s].  Negative values flag truncation breakdown (valid=False).
    """
    if order not in (1, 2):
        raise DomainError("truncation order must be 1 or 2")
    s = float(s)
    if s < 0.0:
        raise DomainError("s must be nonnegative")
    vals = smallest_p1_curve(n, nu, a, np.array([s]), order, c_tilde)
    v = float(vals[0])
    return SmallestEigenvalueEstimate(value=v, order=order, valid=v >= 0.0)


def smallest_p1_curve(n, nu, a, ss, order=2, c_tilde=0.0):
    """Vectorized truncated smallest-eigenvalue density on a grid of points."""
    ss = np.asarray(ss, dtype=float)
    ctx = kernel_context(n, nu, a, c_tilde)
    if order == 1 or n == 1:
        return ctx.density(ss)
    flat = np.sort(np.unique(ss.ravel()))
    # per point: 15-point Gauss-Legendre panels on [0, s]
    panel_nodes = []
    panel_weights = []
    owners = []
    for i, s in enumerate(flat):
        edges = np.linspace(0.0, s, max(3, int(math.ceil(s / 0.22))) + 1)
        nd, wt = composite_nodes(edges)
        panel_nodes.append(nd)
        panel_weights.append(wt)
        owners.append(np.full(nd.size, i))
    xall = np.concatenate([flat] + panel_nodes)
    tab = ctx._transforms(xall)
    ns = flat.size
    tab_s = {k: (v[..., :ns] if k != "x" else v[:ns]) for k, v in tab.items()}
    dens_s = ctx.density(flat)
    dens_all = ctx.density(xall)
    smat = ctx.s_matrix(tab_s, tab)
    smat_T = ctx.s_matrix(tab, tab_s)
    imat = ctx.i_matrix(tab_s, tab)
    dmat = ctx.d_matrix(tab_s, tab)
    out = np.empty(ns)
    pos = ns
    for i, s in enumerate(flat):
        nd = panel_nodes[i]
        wt = panel_weights[i]
        sl = slice(pos, pos + nd.size)
        r2 = (
            dens_s[i] * dens_all[sl]
            - imat[i, sl] * dmat[i, sl]
            - smat[i, sl] * smat_T[sl, i]
        )
        out[i] = dens_s[i] - np.dot(wt, r2)
        pos += nd.size
    lookup = {s: v for s, v in zip(flat, out)}
    res = np.array([lookup[s] for s in ss.ravel()])
    return res.reshape(ss.shape) if ss.ndim else float(res[0])


# ---------------------------------------------------------------------------
# reference densities of the endpoint ensembles
# ---------------------------------------------------------------------------

def density_chgoe_ref(n, nu, lam):
    """Spectral density of the chGOE (a -> 0 endpoint), even n = 2m only.

    Sum over j < m of half-line integrals of Laguerre bilinears against
    sign(lambda - u), including the (lambda <-> u) antisymmetrization.
    """
    if n % 2 or n < 2:
        raise DomainError("the chGOE reference density is implemented for even n = 2m")
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
    m = n // 2

    def bracket(k, z2):
        return (k + 1) * laguerre(k + 1, nu, z2) - (k + nu) * (
            laguerre(k, nu, z2) + laguerre(k - 1, nu, z2) if k >= 1 else laguerre(k, nu, z2)
        )

    out = np.zeros(lam_arr.size)
    for i, lv in enumerate(lam_arr):
        edges = np.unique(np.concatenate([np.linspace(0.0, _CUT, 33), [min(lv, _CUT)]]))
        nd, wt = composite_nodes(edges)
        sign = np.sign(lv - nd)
        total = 0.0
        for j in range(m):
            pref = 2.0 ** (2 * nu + 2) * math.exp(ln_gamma(2 * j + 1.0) - ln_gamma(2 * j + nu + 1.0))
            term = laguerre(2 * j, nu, 4.0 * lv * lv) * bracket(2 * j, 4.0 * nd * nd) - laguerre(
                2 * j, nu, 4.0 * nd * nd
            ) * bracket(2 * j, 4.0 * lv * lv)
            integ = (lv * nd) ** nu * np.exp(-2.0 * nd * nd - 2.0 * lv * lv) * sign * term
            total += pref * np.dot(wt, integ)
        out[i] = total
    return out.reshape(np.shape(lam)) if np.ndim(lam) else float(out[0])


def density_gaoe_ref(n, nu, lam):
    """Spectral density of the GAOE (a -> 1 endpoint)."""
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam, dtype=float)
    for j in range(n):
        k = 2 * j + nu
        out = out + hermite_h(k, math.sqrt(2.0) * lam) ** 2 / (
            math.sqrt(math.pi) * 2.0 ** (k - 1.5) * math.exp(ln_gamma(k + 1.0))
        )
    out = out * np.exp(-2.0 * lam * lam)
    return float(out) if out.ndim == 0 else out


def smallest_exact_chgoe(n, nu, s):
    """Exact smallest-eigenvalue density of the chGOE at finite n.

    nu=1: 4 n s exp(-2 n s^2); nu=0: the Tricomi-U closed form, with the
    z = 0 and n = 1 reductions handled explicitly.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s_arr < 0.0):
        raise DomainError("s must be nonnegative")
    if nu == 1:
        out = 4.0 * n * s_arr * np.exp(-2.0 * n * s_arr ** 2)
    else:
        pref = n * math.sqrt(8.0 / math.pi) * math.exp(ln_gamma((n + 1) / 2.0))
        out = np.empty(s_arr.size)
        for i, sv in enumerate(s_arr):
            if n == 1:
                u = 1.0
            elif sv == 0.0:
                u = math.exp(ln_gamma(1.5) - ln_gamma((n + 2) / 2.0))
            else:
                u = tricomi_u((n - 1) / 2.0, -0.5, 2.0 * sv * sv)
            out[i] = pref * math.exp(-2.0 * n * sv * sv) * u
    return out.reshape(np.shape(s)) if np.ndim(s) else float(out[0])
