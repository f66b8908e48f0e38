"""Ensemble weight functions.

Closed forms for the one-point weight g_nu, the antisymmetric two-point
weight G_nu, its half-line integral Gbar_nu, the constant gbar_nu, and the
modified two-point weight H_nu used for odd pair counts, together with the
definitional-integral oracles they are validated against.

All closed-form entry points broadcast over numpy arrays.  Antisymmetry of
G_nu and H_nu holds exactly by construction: swapping the arguments negates
every ingredient bit-for-bit.

For a > 1 the weights continue analytically: gamma becomes imaginary and
erf turns into erfi.  The manifestly real arrangement implemented here drops
a residual global phase i^(1+nu) (CONTINUATION_PHASE_POWER below), which
cancels in every normalized density.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .quad import DEFAULT_SPEC, composite_nodes, integrate_halfline_gaussian, panel_edges
from .special import erf, erfi

# power of i multiplying the continued weights; kept out of the real forms
CONTINUATION_PHASE_POWER = "1 + nu"

_SQRT_PI = math.sqrt(math.pi)
_ERF_CLIP = 9.0  # exp(-u^2) < 1e-35 beyond this
_CHUNK = 16384


def gamma_factor(a):
    """gamma = sqrt(|1 - a^2|) / a, real branch on either side of a = 1."""
    if a == 1.0:
        raise DomainError("a = 1 is excluded from the analytic weight layer")
    return math.sqrt(abs(1.0 - a * a)) / a


def _check_a(a):
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    if a == 1.0:
        raise DomainError("a = 1 is excluded from the analytic weight layer")


def _check_nonneg(name, v):
    if np.any(np.asarray(v) < 0.0):
        raise DomainError(f"{name} must be nonnegative (the weights are even; callers use evenness explicitly)")


def f_nu(nu, a, x):
    """cosh(4x/a^2) for nu=0, sinh(4x/a^2) for nu=1."""
    z = 4.0 * np.asarray(x, dtype=float) / (a * a)
    if np.any(np.abs(z) > 700.0):
        raise DomainError("f_nu argument overflows; use f_nu_log")
    out = np.cosh(z) if nu == 0 else np.sinh(z)
    return float(out) if out.ndim == 0 else out


def f_nu_log(nu, a, x):
    """(log|f_nu|, sign) in a form safe for arbitrarily large arguments."""
    z = 4.0 * np.asarray(x, dtype=float) / (a * a)
    az = np.abs(z)
    if nu == 0:
        logf = az + np.log1p(np.exp(-2.0 * az)) - math.log(2.0)
        sign = np.ones_like(az)
    else:
        with np.errstate(divide="ignore"):
            logf = np.where(az > 0.0, az + np.log1p(-np.exp(-2.0 * az)) - math.log(2.0), -np.inf)
        sign = np.sign(z)
    return logf, sign


def _erf_gauss_integral(lo, hi, shift, width=0.75):
    """Oriented integral of erf(shift - u) exp(-u^2) du from lo to hi.

    Vectorized over broadcastable lo/hi/shift; the integration range is
    clipped to |u| <= 9 where the Gaussian factor is negligible.
    """
    lo, hi, shift = np.broadcast_arrays(
        np.asarray(lo, dtype=float), np.asarray(hi, dtype=float), np.asarray(shift, dtype=float)
    )
    shape = lo.shape
    lo_f = lo.ravel()
    hi_f = hi.ravel()
    sh_f = shift.ravel()
    sign = np.where(hi_f >= lo_f, 1.0, -1.0)
    a_ = np.clip(np.minimum(lo_f, hi_f), -_ERF_CLIP, _ERF_CLIP)
    b_ = np.clip(np.maximum(lo_f, hi_f), -_ERF_CLIP, _ERF_CLIP)
    out = np.zeros_like(a_)
    span = b_ - a_
    # bucket by span so short intervals do not pay for the full-range rule
    cuts = [0.0, 1.5, 4.5, 9.0, 2.0 * _ERF_CLIP + 1.0]
    from .quad import _GL15_X, _GL15_W  # fixed 15-point panels

    for b_lo, b_hi in zip(cuts[:-1], cuts[1:]):
        idx = np.nonzero((span > b_lo) & (span <= b_hi))[0]
        if idx.size == 0:
            continue
        npanels = max(2, int(math.ceil(b_hi / width)))
        for start in range(0, idx.size, _CHUNK):
            sel = idx[start:start + _CHUNK]
            edges = np.linspace(a_[sel], b_[sel], npanels + 1, axis=-1)
            mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
            half = 0.5 * (edges[:, 1:] - edges[:, :-1])
            u = mid[:, :, None] + half[:, :, None] * _GL15_X
            w = half[:, :, None] * _GL15_W
            vals = erf(sh_f[sel, None, None] - u) * np.exp(-u * u)
            out[sel] = np.sum(w * vals, axis=(1, 2))
    out *= sign
    return out.reshape(shape)


def _erfi_gauss_integral(lo, hi, shift, width=0.25):
    """Continued (a > 1) companion: oriented integral of erfi(shift - u) exp(+u^2)."""
    lo, hi, shift = np.broadcast_arrays(
        np.asarray(lo, dtype=float), np.asarray(hi, dtype=float), np.asarray(shift, dtype=float)
    )
    shape = lo.shape
    lo_f, hi_f, sh_f = lo.ravel(), hi.ravel(), shift.ravel()
    sign = np.where(hi_f >= lo_f, 1.0, -1.0)
    a_ = np.minimum(lo_f, hi_f)
    b_ = np.maximum(lo_f, hi_f)
    out = np.zeros_like(a_)
    live = b_ > a_
    idx = np.nonzero(live)[0]
    for start in range(0, idx.size, _CHUNK):
        sel = idx[start:start + _CHUNK]
        span = (b_[sel] - a_[sel]).max(initial=0.0)
        npanels = max(2, int(math.ceil(span / width)))
        edges = np.linspace(a_[sel], b_[sel], npanels + 1, axis=-1)
        mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
        half = 0.5 * (edges[:, 1:] - edges[:, :-1])
        from .quad import _GL15_X, _GL15_W

        u = mid[:, :, None] + half[:, :, None] * _GL15_X
        w = half[:, :, None] * _GL15_W
        vals = erfi(sh_f[sel, None, None] - u) * np.exp(u * u)
        out[sel] = np.sum(w * vals, axis=(1, 2))
    out *= sign
    return out.reshape(shape)


def g_weight(nu, a, y):
    """One-point weight g_nu(y) for y >= 0 (continued form for a > 1)."""
    _check_a(a)
    _check_nonneg("y", y)
    y = np.asarray(y, dtype=float)
    gam = gamma_factor(a)
    if a < 1.0:
        pref = math.sqrt(math.pi * a * a * (1.0 - a * a) / 8.0)
        tail = (y * erf(math.sqrt(2.0) * gam * y)) ** nu if nu else 1.0
    else:
        pref = math.sqrt(math.pi * a * a * (a * a - 1.0) / 8.0)
        tail = (y * erfi(math.sqrt(2.0) * gam * y)) ** nu if nu else 1.0
    out = pref * np.exp(-2.0 * y * y) * tail
    return float(out) if out.ndim == 0 else out


def G_weight(nu, a, x, y):
    """Antisymmetric two-point weight G_nu(x, y) for x, y >= 0.

    For nu = 1 the inner finite integral is evaluated by a fixed 15-point
    composite Gauss-Legendre rule on the clipped range.  The a > 1 branch is
    the manifestly real erfi continuation (experimental for nu = 1).
    """
    _check_a(a)
    _check_nonneg("x", x)
    _check_nonneg("y", y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gam = gamma_factor(a)
    s2g = math.sqrt(2.0) * gam
    if a < 1.0:
        pref = math.pi * a * a * (1.0 - a * a) / 8.0
        part = erf(gam * (y - x)) * erf(gam * (x + y))
        if nu:
            part = part - (2.0 / _SQRT_PI) * _erf_gauss_integral(s2g * x, s2g * y, s2g * (x + y))
    else:
        pref = math.pi * a * a * (a * a - 1.0) / 8.0
        part = erfi(gam * (y - x)) * erfi(gam * (x + y))
        if nu:
            part = part - (2.0 / _SQRT_PI) * _erfi_gauss_integral(s2g * x, s2g * y, s2g * (x + y))
    out = pref * np.exp(-2.0 * (x * x + y * y)) * part
    if nu:
        out = out * (x * y)  # grouped so swapping x and y negates exactly
    return float(out) if np.ndim(out) == 0 else out


def G_tilde1(a, x, y):
    """The subtracted piece of the nu=1 decomposition G_1 = xy G_0 - Gtilde_1."""
    _check_a(a)
    if a >= 1.0:
        raise DomainError("G_tilde1 is defined on the subcritical branch a < 1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gam = gamma_factor(a)
    s2g = math.sqrt(2.0) * gam
    inner = _erf_gauss_integral(s2g * x, s2g * y, s2g * (x + y))
    return (_SQRT_PI / 4.0) * a * a * (1.0 - a * a) * (x * y) * np.exp(-2.0 * (x * x + y * y)) * inner


def G_bar(nu, a, y, spec=DEFAULT_SPEC):
    """Gbar_nu(y) = integral of G_nu(x', y) dx' over the first argument.

    nu = 0 keeps one non-elementary integral, evaluated by a fixed half-line
    rule; nu = 1 is fully closed.
    """
    _check_a(a)
    if a >= 1.0:
        raise DomainError("G_bar is defined on the subcritical branch a < 1")
    _check_nonneg("y", y)
    y = np.asarray(y, dtype=float)
    one = 1.0 - a * a
    if nu == 1:
        t1 = (
            math.pi * a * a * one ** 1.5 / 32.0
            * y * np.exp(-2.0 * y * y)
            * erf(np.sqrt(2.0 * one / (a * a)) * y)
        )
        t2 = (
            math.pi * a * a * one ** 1.5 / (16.0 * math.sqrt(1.0 + a * a))
            * y * np.exp(-4.0 * y * y / (1.0 + a * a))
            * erf(np.sqrt(2.0 * one / (a * a * (1.0 + a * a))) * y)
        )
        out = t1 - t2
        return float(out) if out.ndim == 0 else out
    b = math.sqrt(2.0 * one) / a
    flat = np.atleast_1d(y).ravel()
    cut = spec.truncation_margin + b * flat.max(initial=0.0)
    nodes, wts = composite_nodes(panel_edges(0.0, cut, 0.5))
    u = nodes[None, :]
    integral = np.sum(
        wts * erf(a * u) * (np.exp(-((u - b * flat[:, None]) ** 2)) + np.exp(-((u + b * flat[:, None]) ** 2))),
        axis=1,
    )
    out = (
        math.pi * a * a * one / 2.0 ** 3.5 * np.exp(-2.0 * flat * flat) * integral
        - math.pi ** 1.5 * a * a * one / 2.0 ** 4.5 * np.exp(-2.0 * flat * flat)
    )
    out = out.reshape(np.shape(y)) if np.ndim(y) else float(out[0])
    return out


def g_bar(nu, a):
    """Half-line mass of g_nu: sqrt(pi^3 a^2 / 32) ((1-a^2)/(2 pi))^((nu+1)/2)."""
    _check_a(a)
    if a >= 1.0:
        raise DomainError("g_bar is defined on the subcritical branch a < 1")
    return math.sqrt(math.pi ** 3 * a * a / 32.0) * ((1.0 - a * a) / (2.0 * math.pi)) ** (0.5 * (nu + 1))


def g_bar_direct(nu, a):
    """Equivalent direct-integration form pi sqrt(a^2(1-a^2))/8 ((1-a^2)/(2 pi))^(nu/2)."""
    _check_a(a)
    if a >= 1.0:
        raise DomainError("g_bar is defined on the subcritical branch a < 1")
    return math.pi * math.sqrt(a * a * (1.0 - a * a)) / 8.0 * ((1.0 - a * a) / (2.0 * math.pi)) ** (0.5 * nu)


def H_weight(nu, a, x, y, spec=DEFAULT_SPEC):
    """Modified two-point weight for odd pair counts.

    H(x,y) = G(x,y) - g(x) Gbar(y)/gbar + g(y) Gbar(x)/gbar, using that the
    integral of G over its second argument is -Gbar by antisymmetry.  Every
    polynomial is then skew-orthogonal to the constant monomial.  Evaluated
    once on the ordered pair and negated, so antisymmetry is exact.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sgn = np.where(y >= x, 1.0, -1.0)
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    gb = g_bar(nu, a)
    val = (
        G_weight(nu, a, lo, hi)
        - g_weight(nu, a, lo) * G_bar(nu, a, hi, spec) / gb
        + g_weight(nu, a, hi) * G_bar(nu, a, lo, spec) / gb
    )
    out = sgn * val
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# definitional-integral oracles
# ---------------------------------------------------------------------------

def g_weight_def_oracle(nu, a, y, spec=DEFAULT_SPEC):
    """g_nu(y) from its defining integral (0 < a < 1 only), scalar y.

    y^nu exp(-2y^2/a^2) int_0^inf exp(-2x^2/(a^2(1-a^2))) f_nu(x y) dx, with
    all exponents combined in log space before exponentiation.
    """
    _check_a(a)
    if a >= 1.0:
        raise DomainError("the definitional integral requires 0 < a < 1")
    y = float(y)
    if y < 0.0:
        raise DomainError("y must be nonnegative")
    if nu == 1 and y == 0.0:
        return 0.0
    one = 1.0 - a * a
    decay = 2.0 / (a * a * one)
    outer = -2.0 * y * y / (a * a) + (nu * math.log(y) if nu else 0.0)

    def integrand(x):
        logf, sign = f_nu_log(nu, a, x * y)
        return sign * np.exp(-decay * x * x + logf + outer)

    return integrate_halfline_gaussian(integrand, decay, spec, extent=y * one)


def G_weight_def_oracle(nu, a, x, y, spec=DEFAULT_SPEC, width=0.35):
    """G_nu(x, y) from its defining double integral (0 < a < 1 only), scalars.

    The sign(t - s) factor is removed by folding the quadrant onto the
    triangle t = s + v, v > 0, which leaves a smooth integrand evaluated on
    a fixed tensor rule; identical node sets on both axes make the oracle
    antisymmetric under x <-> y to machine precision.
    """
    _check_a(a)
    if a >= 1.0:
        raise DomainError("the definitional integral requires 0 < a < 1")
    x = float(x)
    y = float(y)
    if min(x, y) < 0.0:
        raise DomainError("arguments must be nonnegative")
    if nu == 1 and (x == 0.0 or y == 0.0):
        return 0.0
    one = 1.0 - a * a
    decay = 2.0 / (a * a * one)
    shift = max(x, y) * one
    cut = spec.truncation_margin / math.sqrt(decay) + shift
    nodes, wts = composite_nodes(panel_edges(0.0, cut, min(width, cut / 8.0)))
    outer = -2.0 * (x * x + y * y) / (a * a) + (nu * (math.log(x) + math.log(y)) if nu else 0.0)

    def F(s, t):
        lf1, s1 = f_nu_log(nu, a, s * x)
        lf2, s2 = f_nu_log(nu, a, t * y)
        return s1 * s2 * np.exp(-decay * (s * s + t * t) + lf1 + lf2 + outer)

    s = nodes[:, None]
    v = nodes[None, :]
    vals = F(s, s + v) - F(s + v, s)
    return float(wts @ vals @ wts)
