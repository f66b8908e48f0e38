"""Scalar special functions needed by the ensemble closed forms.

Error functions and log-Gamma delegate to scipy/libm; erfi is an in-house
all-positive Maclaurin series (stable over the whole pre-overflow range);
Hermite and generalized Laguerre polynomials are evaluated by three-term
recurrence, never from expanded coefficients; Tricomi's U comes from its
defining half-line integral by adaptive quadrature.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from .errors import DomainError, RangeError

_MAX_POLY_DEGREE = 200
# erfi(x) ~ exp(x^2)/(sqrt(pi) x) exceeds the float64 range past x ~ 26.7
_ERFI_OVERFLOW = 26.65
_ERFI_GUARD = 40.0


def erf(x):
    return _sp.erf(x)


def erfc(x):
    return _sp.erfc(x)


def erfi(x):
    """Imaginary error function erf(ix)/i for real x.

    Maclaurin series (2/sqrt(pi)) sum_k x^(2k+1) / (k! (2k+1)).  Every term is
    positive, so the sum carries full relative precision for any |x| below the
    float64 overflow point, where a RangeError is raised.
    """
    arr = np.asarray(x, dtype=float)
    amax = np.abs(arr).max(initial=0.0)
    if amax > _ERFI_GUARD:
        raise RangeError(f"erfi argument {amax} beyond growth guard {_ERFI_GUARD}")
    if amax >= _ERFI_OVERFLOW:
        raise RangeError(f"erfi({amax}) overflows double precision")
    z = arr * arr
    term = np.abs(arr).astype(float)
    acc = term.copy()
    k = 0
    # terms grow until k ~ x^2; afterwards they decay factorially
    kmax = int(2.0 * amax * amax) + 60
    while k < kmax:
        term = term * z / (k + 1.0)
        contrib = term / (2.0 * k + 3.0)
        acc += contrib
        k += 1
        if contrib.max(initial=0.0) <= 1e-17 * acc.max(initial=1e-300):
            break
    out = (2.0 / math.sqrt(math.pi)) * np.sign(arr) * acc
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def _erfi_asymptotic(x, terms=12):
    """Large-|x| expansion exp(x^2)/(sqrt(pi) x) (1 + 1/(2x^2) + 3/(4x^4) + ...).

    Truncation error ~ the first omitted term; only trustworthy for |x| >~ 5.
    Kept as an independent cross-check of the series implementation.
    """
    s = 1.0
    term = 1.0
    for k in range(1, terms):
        term *= (2 * k - 1) / (2.0 * x * x)
        s += term
    return math.exp(x * x) / (math.sqrt(math.pi) * x) * s


def hermite_h(k, x):
    """Physicists' Hermite polynomial H_k by the recurrence H_{k+1} = 2x H_k - 2k H_{k-1}."""
    if k < 0 or k != int(k):
        raise DomainError(f"degree must be a nonnegative integer, got {k}")
    if k > _MAX_POLY_DEGREE:
        raise DomainError(f"degree {k} exceeds cap {_MAX_POLY_DEGREE}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if k == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h_cur = 2.0 * x
    for m in range(1, int(k)):
        h_prev, h_cur = h_cur, 2.0 * x * h_cur - 2.0 * m * h_prev
    return h_cur if h_cur.ndim else float(h_cur)


def laguerre(k, alpha, x):
    """Generalized Laguerre polynomial L_k^(alpha) by three-term recurrence.

    Leading coefficient is (-1)^k / k!, so (-4)^k k! L_k^(alpha)(4 t) is monic
    in t.
    """
    if k < 0 or k != int(k):
        raise DomainError(f"degree must be a nonnegative integer, got {k}")
    if k > _MAX_POLY_DEGREE:
        raise DomainError(f"degree {k} exceeds cap {_MAX_POLY_DEGREE}")
    if alpha <= -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if k == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l_cur = 1.0 + alpha - x
    for m in range(1, int(k)):
        l_prev, l_cur = l_cur, ((2 * m + 1 + alpha - x) * l_cur - (m + alpha) * l_prev) / (m + 1.0)
    return l_cur if l_cur.ndim else float(l_cur)


def gaussian_moment(k, c):
    """Full-line even Gaussian moment: integral of y^(2k) exp(-c y^2) over R.

    Equals (2k-1)!! sqrt(pi) / (2^k c^(k+1/2)); evaluated in log space.
    """
    if c <= 0.0:
        raise DomainError(f"decay constant must be positive, got {c}")
    if k < 0 or k != int(k):
        raise DomainError(f"moment order must be a nonnegative integer, got {k}")
    k = int(k)
    logval = (
        0.5 * math.log(math.pi)
        + math.lgamma(2 * k + 1)
        - math.lgamma(k + 1)
        - k * math.log(4.0)
        - (k + 0.5) * math.log(c)
    )
    return math.exp(logval)


def ln_gamma(x):
    """log Gamma(x) for x > 0."""
    if np.isscalar(x):
        if x <= 0.0:
            raise DomainError(f"ln_gamma requires x > 0, got {x}")
        return math.lgamma(x)
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("ln_gamma requires positive arguments")
    return _sp.gammaln(arr)


def tricomi_u(alpha, b, z, rel_tol=1e-10):
    """Tricomi's confluent hypergeometric U(alpha, b, z) for alpha > 0, z > 0.

    Uses the defining integral Gamma(alpha)^-1 int_0^inf exp(-z t)
    t^(alpha-1) (1+t)^(b-alpha-1) dt, after t = w^2 (which removes the
    endpoint singularity for the half-integer alpha used here) and a
    compactifying map w = u/(1-u).
    """
    if alpha <= 0.0:
        raise DomainError(f"tricomi_u requires alpha > 0, got {alpha}")
    if z <= 0.0:
        raise DomainError(f"tricomi_u requires z > 0, got {z}")
    from .quad import QuadratureSpec, integrate_finite

    pow_w = 2.0 * alpha - 1.0
    pow_t = b - alpha - 1.0

    def integrand(u):
        u = np.asarray(u, dtype=float)
        w = u / (1.0 - u)
        val = np.exp(-z * w * w + pow_w * np.log(np.maximum(w, 1e-300))) * (1.0 + w * w) ** pow_t
        return val / (1.0 - u) ** 2

    spec = QuadratureSpec(abs_tol=1e-300, rel_tol=rel_tol, max_depth=52)
    # split at the image of w=1 to help the adaptive rule
    val = integrate_finite(integrand, 0.0, 0.5, spec) + integrate_finite(
        integrand, 0.5, 1.0 - 1e-14, spec
    )
    return 2.0 * val / math.exp(math.lgamma(alpha))
