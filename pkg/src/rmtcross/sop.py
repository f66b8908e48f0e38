"""Skew-orthogonal polynomials of the crossover ensemble.

The polynomials p_j (monic, degree j in t = x^2) and their partners q_j
(monic, degree j+1) are built as exact coefficient vectors, with no
quadrature: the canonical route expands a finite double-Hermite sum, and an
independent construction goes through generalized Laguerre polynomials with
closed Gaussian moments.  Oracles (contour / Gaussian-integral / operator)
and the a -> 0, 1, infinity limit polynomials are provided for
cross-validation, together with the skew-symmetric products against the
two-point weights.

Skew products are evaluated on a deterministic triangle-folded tensor rule.
Because the target values shrink like powers of (1 - a^2) while the raw
integrand does not, double precision can lose the result entirely close to
a = 1; callers that need a guaranteed absolute accuracy pass `needed_abs`,
and the product is recomputed with MPFR arithmetic (gmpy2) through exact
antisymmetric moment matrices whenever the double-precision roundoff floor
comes near that target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SizeLimitError, StepError
from .params import TransitionParams
from .quad import composite_nodes
from .special import gaussian_moment, ln_gamma
from .weights import G_bar, G_weight, g_bar, g_weight, gamma_factor

_MAX_INDEX = 60
_LOG_OVERFLOW = 700.0


@dataclass(frozen=True)
class SqPolynomial:
    """Polynomial in t = x^2 stored as coefficients c_0..c_d.

    recipe records how the polynomial was constructed (("p", j, nu, a) or
    ("q", j, nu, a, c_tilde)) so that the multiprecision skew-product path
    can rebuild its coefficients beyond double precision; derived
    polynomials carry no recipe and fall back to their float coefficients.
    """

    coeffs: tuple
    recipe: tuple | None = None

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_monic(self):
        return self.coeffs[-1] == 1.0

    def eval_t(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for c in reversed(self.coeffs):
            out = out * t + c
        return float(out) if out.ndim == 0 else out

    def eval_x(self, x):
        x = np.asarray(x, dtype=float)
        return self.eval_t(x * x)

    def plus_scaled(self, other, scale):
        n = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(n)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += scale * np.asarray(other.coeffs)
        return SqPolynomial(tuple(c))


@dataclass(frozen=True)
class SopPair:
    """A (p_j, q_j) pair with its normalization h_j and gauge constant."""

    p: SqPolynomial
    q: SqPolynomial
    h: float
    j: int
    params: TransitionParams
    c_tilde: float


def _check_index(j, cap=_MAX_INDEX):
    if j < 0 or j != int(j):
        raise DomainError(f"polynomial index must be a nonnegative integer, got {j}")
    if j > cap:
        raise SizeLimitError(f"polynomial index {j} exceeds cap {cap}")
    return int(j)


def _assemble(terms, degree):
    """Sum signed log-magnitude contributions per coefficient, stably.

    terms: list of (power, log_magnitude, sign).  Raises if any single term
    overflows double precision (coefficient overflow at extreme j and a).
    """
    logs = [[] for _ in range(degree + 1)]
    signs = [[] for _ in range(degree + 1)]
    for p, lg, s in terms:
        if lg > _LOG_OVERFLOW:
            raise SizeLimitError("coefficient overflow in polynomial assembly")
        logs[p].append(lg)
        signs[p].append(s)
    out = np.zeros(degree + 1)
    for p in range(degree + 1):
        if not logs[p]:
            continue
        lg = np.array(logs[p])
        sg = np.array(signs[p])
        m = lg.max()
        out[p] = math.exp(m) * float(np.sum(sg * np.exp(lg - m))) if m > -np.inf else 0.0
    return out


def _monic(coeffs):
    lead = coeffs[-1]
    if lead == 0.0 or abs(lead - 1.0) > 1e-6:
        raise DomainError(f"assembly lost monicity (leading coefficient {lead})")
    out = coeffs / lead
    out[-1] = 1.0
    return SqPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------

def _hermite_coeff(k):
    """Coefficient array of the physicists' Hermite polynomial H_k (power of x)."""
    h_prev = np.array([1.0])
    if k == 0:
        return h_prev
    h_cur = np.array([0.0, 2.0])
    for m in range(1, k):
        nxt = np.zeros(m + 2)
        nxt[1:] = 2.0 * h_cur
        nxt[: m] -= 2.0 * m * h_prev
        h_prev, h_cur = h_cur, nxt
    return h_cur


def _laguerre_log_coeffs(k, alpha):
    """(log_magnitude, sign) per power for L_k^(alpha), alpha integer >= 0."""
    out = []
    for i in range(k + 1):
        lg = (
            ln_gamma(k + alpha + 1.0)
            - ln_gamma(alpha + i + 1.0)
            - ln_gamma(k - i + 1.0)
            - ln_gamma(i + 1.0)
        )
        out.append((i, lg, (-1.0) ** i))
    return out


# ---------------------------------------------------------------------------
# polynomial constructions
# ---------------------------------------------------------------------------

def p_poly(j, nu, a):
    """p_j as a monic coefficient vector in t = x^2, from the double-Hermite sum.

    x^nu p_j(x) = (a^2/8)^(j+nu/2) sum_k  j!(j+nu)! / (k!(j-k)!(j-k+nu)!)
                  (-2/a^2)^k H_{j-k}(u) H_{j-k+nu}(u),   u = sqrt(2/a^2) x;
    every odd power of x cancels, the log-scaled prefactors keep intermediate
    magnitudes representable, and the result is normalized exactly monic.
    """
    j = _check_index(j)
    if nu not in (0, 1):
        raise DomainError(f"nu must be 0 or 1, got {nu}")
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    lg2a = math.log(2.0) - 2.0 * math.log(a)
    base = (j + 0.5 * nu) * (2.0 * math.log(a) - math.log(8.0))
    terms = []
    for k in range(j + 1):
        prod = np.polynomial.polynomial.polymul(_hermite_coeff(j - k), _hermite_coeff(j - k + nu))
        lg_k = (
            ln_gamma(j + 1.0)
            + ln_gamma(j + nu + 1.0)
            - ln_gamma(k + 1.0)
            - ln_gamma(j - k + 1.0)
            - ln_gamma(j - k + nu + 1.0)
            + k * lg2a
        )
        sg_k = (-1.0) ** k
        for p in range((len(prod) - nu) // 2 + 1):
            idx = 2 * p + nu
            if idx >= len(prod) or prod[idx] == 0.0:
                continue
            terms.append((p, lg_k + base + (p + 0.5 * nu) * lg2a + math.log(abs(prod[idx])), sg_k * np.sign(prod[idx])))
    out = _monic(_assemble(terms, j))
    return SqPolynomial(out.coeffs, recipe=("p", j, nu, float(a)))


def _laguerre_block(j_top, alpha0, shift_moment, a, degree):
    """Gaussian-moment integral of L_{j_top}^(alpha0)(4t/(1+a^2) + y^2).

    Returns per-coefficient (power, log, sign) terms of
    sum_m moment(m+shift_moment, c) (-1)^m / m!  L_{j_top-m}^(alpha0+m)(beta t),
    with c = (1+a^2)/(2 a^2) and beta = 4/(1+a^2).  Empty for j_top < 0.
    """
    terms = []
    if j_top < 0:
        return terms
    c = (1.0 + a * a) / (2.0 * a * a)
    lbeta = math.log(4.0) - math.log1p(a * a)
    for m in range(j_top + 1):
        lg_m = math.log(gaussian_moment(m + shift_moment, c)) - ln_gamma(m + 1.0)
        sg_m = (-1.0) ** m
        for i, lg, sg in _laguerre_log_coeffs(j_top - m, alpha0 + m):
            if i > degree:
                continue
            terms.append((i, lg + lg_m + i * lbeta, sg * sg_m))
    return terms


def _scale_terms(terms, dlog, sign=1.0, shift=0):
    return [(p + shift, lg + dlog, s * sign) for (p, lg, s) in terms]


def _log_pref(j, a):
    """log magnitude of j! (1+a^2)^(j+1/2) / ((-4)^j sqrt(2 pi) a); sign is (-1)^j."""
    return (
        ln_gamma(j + 1.0)
        + (j + 0.5) * math.log1p(a * a)
        - j * math.log(4.0)
        - 0.5 * math.log(2.0 * math.pi)
        - math.log(a)
    )


def p_poly_laguerre(j, nu, a):
    """Independent construction of p_j through the Laguerre representation."""
    j = _check_index(j)
    if nu not in (0, 1):
        raise DomainError(f"nu must be 0 or 1, got {nu}")
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    pref = _log_pref(j, a)
    sgn = (-1.0) ** j
    terms = _scale_terms(_laguerre_block(j, nu, 0, a, j), pref, sgn)
    return _monic(_assemble(terms, j))


def q_poly(j, nu, a, c_tilde=0.0):
    """q_j as a monic coefficient vector in t = x^2 (degree j+1).

    Assembled from the three Laguerre blocks of the closed representation
    with exact Gaussian moments; Laguerre polynomials of negative index are
    zero.  The free gauge constant enters exactly as q + c_tilde * p.
    """
    j = _check_index(j)
    if nu not in (0, 1):
        raise DomainError(f"nu must be 0 or 1, got {nu}")
    if not a > 0.0 or abs(a - 1.0) < 1e-12:
        raise DomainError(f"q_poly requires a > 0 with a != 1, got {a}")
    one = 1.0 - a * a  # negative on the continued branch a > 1
    pref = _log_pref(j, a)
    sgn = (-1.0) ** j
    deg = j + 1
    terms = []
    # -4 t / (1+a^2)^2 * L_{j-2}^{(nu+2)}
    blk = _laguerre_block(j - 2, nu + 2, 0, a, deg)
    terms += _scale_terms(blk, pref + math.log(4.0) - 2.0 * math.log1p(a * a), -sgn, shift=1)
    # (2 nu + 1 - 4(1-a^2) t) / (2 (1+a^2)) * L_{j-1}^{(nu+1)}
    # (the constant is 2 nu + 1: rederiving the block from the second-order
    # operator gives +(2 nu + 1), and only that sign keeps q_j for even j
    # skew-orthogonal to the low monomials)
    blk = _laguerre_block(j - 1, nu + 1, 0, a, deg)
    const = 2.0 * nu + 1.0
    terms += _scale_terms(
        blk, pref + math.log(const) - math.log(2.0) - math.log1p(a * a), sgn
    )
    terms += _scale_terms(
        blk,
        pref + math.log(4.0 * abs(one)) - math.log(2.0) - math.log1p(a * a),
        -sgn * np.sign(one),
        shift=1,
    )
    # (t + kappa_j) L_j^{(nu)}  with kappa_j = -(1-a^2)(2 j a^2 - 1)/(4 a^2)
    blk = _laguerre_block(j, nu, 0, a, deg)
    terms += _scale_terms(blk, pref, sgn, shift=1)
    kappa = -one * (2.0 * j * a * a - 1.0) / (4.0 * a * a)
    if kappa != 0.0:
        terms += _scale_terms(blk, pref + math.log(abs(kappa)), sgn * np.sign(kappa))
    # -(1-a^4) y^2 / (4 a^4) L_j^{(nu)}  (y^2 raises the Gaussian moment order)
    blk = _laguerre_block(j, nu, 1, a, deg)
    one4 = 1.0 - a ** 4
    terms += _scale_terms(
        blk, pref + math.log(abs(one4)) - math.log(4.0) - 4.0 * math.log(a), -sgn * np.sign(one4)
    )
    base = _monic(_assemble(terms, deg))
    if c_tilde != 0.0:
        base = base.plus_scaled(p_poly(j, nu, a), c_tilde)
    return SqPolynomial(base.coeffs, recipe=("q", j, nu, float(a), float(c_tilde)))


def norm_h(j, nu, a):
    """Skew-product normalization h_j = pi a^2 (1-a^2)^(2j+2+nu) j!(j+nu)! / 2^(4j+2nu+7)."""
    j = _check_index(j)
    if not 0.0 < a < 1.0:
        raise DomainError(f"norm_h requires 0 < a < 1, got {a}")
    return math.exp(
        math.log(math.pi)
        + 2.0 * math.log(a)
        + (2 * j + 2 + nu) * math.log1p(-a * a)
        + ln_gamma(j + 1.0)
        + ln_gamma(j + nu + 1.0)
        - (4 * j + 2 * nu + 7) * math.log(2.0)
    )


def sop_pair(j, nu, a, c_tilde=0.0):
    return SopPair(
        p=p_poly(j, nu, a),
        q=q_poly(j, nu, a, c_tilde),
        h=norm_h(j, nu, a),
        j=int(j),
        params=TransitionParams(max(int(j), 0), nu, a),
        c_tilde=float(c_tilde),
    )


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def p_contour_oracle(j, nu, a, x):
    """p_j(x) from the double angular-integral representation.

    Trapezoidal rule with 4(j+nu)+32 nodes per axis; the integrand is a
    trigonometric polynomial, so the rule is spectrally exact.
    """
    j = _check_index(j, cap=20)
    if abs(x) < 1e-8 and nu == 1:
        raise DomainError("contour oracle divides by x^nu; use the polynomial form near 0")
    m = 4 * (j + nu) + 32
    phi = 2.0 * math.pi * np.arange(m) / m
    el = np.exp(1j * phi)
    zl = el[:, None]
    zr = el[None, :]
    w = np.exp(
        -a * a / 8.0 * (zl ** 2 + zr ** 2) - x * (zl + zr) - 0.25 * zl * zr
    ) * np.exp(-1j * (j * phi[:, None] + (j + nu) * phi[None, :]))
    mean = w.mean()
    val = math.exp(ln_gamma(j + 1.0) + ln_gamma(j + nu + 1.0)) / (-x) ** nu * mean
    return float(val.real)


def p_gauss_oracle(j, nu, a, x):
    """p_j(x) from the two-fold Gaussian integral representation (0 < a < 1)."""
    j = _check_index(j, cap=20)
    if not 0.0 < a < 1.0:
        raise DomainError("Gaussian-integral oracle requires 0 < a < 1")
    sig_y = math.sqrt((1.0 + a * a) / 8.0)
    sig_l = math.sqrt((1.0 - a * a) / 8.0)
    span = 8.0 + 2.0 * math.sqrt(j + nu)
    ny, wy = composite_nodes(np.linspace(-span * sig_y, span * sig_y, 61))
    nl, wl = composite_nodes(np.linspace(-span * sig_l, span * sig_l, 61))
    yy = ny[:, None]
    ll = nl[None, :]
    vals = (
        np.exp(-4.0 / (1.0 + a * a) * yy ** 2 - 4.0 / (1.0 - a * a) * ll ** 2)
        * (1j * yy + ll + x) ** j
        * (1j * yy - ll + x) ** (j + nu)
    )
    integral = wy @ vals @ wl
    return float((4.0 / (math.pi * math.sqrt(1.0 - a ** 4)) * integral).real) / x ** nu


def q_via_operator_oracle(j, nu, a, c_tilde=0.0, step=1e-6):
    """q_j from the second-order operator acting on x^nu p_j.

    The a^2-derivative is a central finite difference on p_poly coefficient
    vectors; agreement with q_poly is expected at the finite-difference level
    (~1e-5 per coefficient) after gauge alignment.
    """
    j = _check_index(j)
    if not 1e-3 < a < 1.0 - 1e-3:
        raise StepError("operator oracle needs 1e-3 < a < 1 - 1e-3 for the a^2 step")
    a2 = a * a
    cp = np.asarray(p_poly(j, nu, math.sqrt(a2 + step)).coeffs)
    cm = np.asarray(p_poly(j, nu, math.sqrt(a2 - step)).coeffs)
    dc = (cp - cm) / (2.0 * step)
    c = np.asarray(p_poly(j, nu, a).coeffs)
    out = np.zeros(j + 2)
    out[1:] += c  # x^2 (x^nu p) -> shift in t
    # d^2/dx^2 on x^(2k+nu): factor (2k+nu)(2k+nu-1), power drops by one t-unit
    for k in range(1, j + 1):
        out[k - 1] -= (2 * k + nu) * (2 * k + nu - 1) / 16.0 * c[k]
    out[: j + 1] += (a2 * a2 - 1.0) / 2.0 * dc
    out[: j + 1] += c_tilde * c
    return SqPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# limit polynomials
# ---------------------------------------------------------------------------

def p_limit_chgoe(j, nu):
    """a -> 0 limit: monic version of j!/(-4)^j L_j^(nu)(4t)."""
    j = _check_index(j)
    terms = []
    for i, lg, sg in _laguerre_log_coeffs(j, nu):
        terms.append((i, lg + ln_gamma(j + 1.0) + (i - j) * math.log(4.0), sg * (-1.0) ** j))
    return _monic(_assemble(terms, j))


def q_limit_chgoe(j, nu):
    """a -> 0 limit of q_j: the three-Laguerre combination, normalized monic.

    Gauge fixed by the cancellation choice c_tilde(0) = j + 1; the raw
    combination carries leading coefficient -4, which the monic
    normalization removes.
    """
    j = _check_index(j)
    base = ln_gamma(j + 1.0) - j * math.log(4.0)
    sgnj = (-1.0) ** j
    terms = []
    for i, lg, sg in _laguerre_log_coeffs(j + 1, nu):
        terms.append((i, lg + base + math.log(j + 1.0) + i * math.log(4.0), sg * sgnj))
    if j + nu > 0:
        for i, lg, sg in _laguerre_log_coeffs(j, nu):
            terms.append((i, lg + base + math.log(j + nu) + i * math.log(4.0), -sg * sgnj))
        if j >= 1:
            for i, lg, sg in _laguerre_log_coeffs(j - 1, nu):
                terms.append((i, lg + base + math.log(j + nu) + i * math.log(4.0), -sg * sgnj))
    coeffs = _assemble(terms, j + 1)
    coeffs /= coeffs[-1]
    coeffs[-1] = 1.0
    return SqPolynomial(tuple(coeffs))


def p_limit_gaoe(j, nu):
    """a -> 1 limit: x^nu p_j = 2^(-3(2j+nu)/2) H_{2j+nu}(sqrt(2) x)."""
    j = _check_index(j)
    h = _hermite_coeff(2 * j + nu)
    out = np.zeros(j + 1)
    for k in range(j + 1):
        out[k] = h[2 * k + nu] * 2.0 ** (0.5 * (2 * k + nu) - 1.5 * (2 * j + nu))
    return _monic(out)


def p_limit_split(j, nu):
    """a -> infinity limit: x^nu p_j = 2^(-3(2j+nu)/2) H_j(sqrt(2) x) H_{j+nu}(sqrt(2) x)."""
    j = _check_index(j)
    prod = np.polynomial.polynomial.polymul(_hermite_coeff(j), _hermite_coeff(j + nu))
    out = np.zeros(j + 1)
    for k in range(j + 1):
        out[k] = prod[2 * k + nu] * 2.0 ** (0.5 * (2 * k + nu) - 1.5 * (2 * j + nu))
    return _monic(out)


# ---------------------------------------------------------------------------
# skew-symmetric products
# ---------------------------------------------------------------------------

_AXIS_CUT = 8.0
_MP_CUT = 6.5
_MOMENT_DEG = 10
_double_cache = {}
_mp_cache = {}


def _axis_edges(a, base=0.4):
    """Panel edges on [0, cut], geometrically refined near 0 when the weight
    transition scale 1/gamma is finer than the base panel width."""
    gam = gamma_factor(a)
    minw = min(base, 0.25 / max(gam, 1e-12))
    edges = [0.0]
    w = minw
    pos = 0.0
    while pos < _AXIS_CUT:
        pos = min(pos + w, _AXIS_CUT)
        edges.append(pos)
        w = min(2.0 * w, base)
    return np.array(edges)


def _double_ctx(nu, a):
    key = (nu, round(a, 15))
    ctx = _double_cache.get(key)
    if ctx is not None:
        return ctx
    x, w = composite_nodes(_axis_edges(a))
    yy = x[:, None] + x[None, :]
    gv = G_weight(nu, a, np.broadcast_to(x[:, None], yy.shape), yy)
    wg = (w[:, None] * w[None, :]) * gv
    gx = g_weight(nu, a, x)
    gbx = G_bar(nu, a, x)
    ctx = {"x": x, "w": w, "yy": yy, "wg": wg, "g": gx, "gbar_vec": gbx, "gbar": g_bar(nu, a)}
    _double_cache[key] = ctx
    return ctx


def _double_even(ctx, f, g):
    fx = f.eval_x(ctx["x"])
    gx = g.eval_x(ctx["x"])
    fy = f.eval_x(ctx["yy"])
    gy = g.eval_x(ctx["yy"])
    kernel = fx[:, None] * gy - fy * gx[:, None]
    val = float(np.sum(ctx["wg"] * kernel))
    raw = float(np.sum(np.abs(ctx["wg"] * kernel)))
    return val, raw


def _line_integrals(ctx, f):
    fx = f.eval_x(ctx["x"])
    wf = ctx["w"] * fx
    return float(wf @ ctx["g"]), float(wf @ ctx["gbar_vec"])


def skew_product_even(f, g, nu, a, needed_abs=None):
    """<f, g> against G_nu on the positive quadrant.

    needed_abs, when given, is the absolute accuracy the caller requires;
    if the double-precision roundoff floor is not comfortably below it the
    product is recomputed in multiprecision.
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"skew products require 0 < a < 1, got {a}")
    ctx = _double_ctx(nu, a)
    val, raw = _double_even(ctx, f, g)
    if needed_abs is not None and 5e-15 * raw > 0.125 * needed_abs:
        val = _mp_product(nu, a, f, g, odd=False)
    return val


def skew_product_odd(f, g, nu, a, needed_abs=None):
    """<f, g> against the modified weight H_nu.

    Expanded as the G_nu product plus separable one-dimensional corrections,
    (1/gbar) [ (int f g)(int g Gbar) - (int g g)(int f Gbar) ].
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"skew products require 0 < a < 1, got {a}")
    ctx = _double_ctx(nu, a)
    val, raw = _double_even(ctx, f, g)
    fg, fgb = _line_integrals(ctx, f)
    gg, ggb = _line_integrals(ctx, g)
    corr = (fg * ggb - gg * fgb) / ctx["gbar"]
    raw += (abs(fg * ggb) + abs(gg * fgb)) / ctx["gbar"]
    val = val - corr
    if needed_abs is not None and 5e-15 * raw > 0.125 * needed_abs:
        val = _mp_product(nu, a, f, g, odd=True)
    return val


# ---------------------------------------------------------------------------
# multiprecision path
# ---------------------------------------------------------------------------
#
# Close to a = 1 the products shrink like powers of (1 - a^2) while the raw
# integrand does not, and certifying them can require absolute accuracies
# around 1e-22.  That is reachable with a modest fixed mesh *provided* the
# quadrature nodes and weights themselves carry full precision: float64
# Gauss-Legendre tables cap the rule at ~1e-19 absolute here.

_MP_PRECISION = 160


def _mp_leggauss(order, prec=_MP_PRECISION + 40):
    """Gauss-Legendre nodes/weights on [-1, 1] in MPFR, by Newton iteration."""
    import gmpy2

    gmpy2.get_context().precision = prec
    mp = gmpy2.mpfr
    nodes, weights = [], []
    tol = mp(10) ** (-(prec * 3) // 10)
    for i in range(1, order + 1):
        x = mp(math.cos(math.pi * (i - 0.25) / (order + 0.5)))
        for _ in range(80):
            p0, p1 = mp(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < tol:
                break
        p0, p1 = mp(1), x
        for k in range(2, order + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = order * (x * p1 - p0) / (x * x - 1)
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    return nodes, weights


_mp_coeff_cache = {}


def _mp_gaussian_moment(m, c):
    import gmpy2

    return (
        gmpy2.sqrt(gmpy2.const_pi())
        * gmpy2.factorial(2 * m)
        / (gmpy2.mpfr(4) ** m * gmpy2.factorial(m) * c ** (gmpy2.mpfr(m) + gmpy2.mpfr("0.5")))
    )


def _mp_laguerre_block(j_top, alpha0, shift_moment, aa, deg):
    """Multiprecision version of _laguerre_block (exact binomials)."""
    import gmpy2

    mp = gmpy2.mpfr
    out = [mp(0)] * (deg + 1)
    if j_top < 0:
        return out
    c = (1 + aa * aa) / (2 * aa * aa)
    beta = 4 / (1 + aa * aa)
    for m in range(j_top + 1):
        pref = _mp_gaussian_moment(m + shift_moment, c) * mp((-1) ** m) / gmpy2.factorial(m)
        bp = mp(1)
        for i in range(j_top - m + 1):
            if i <= deg:
                coef = mp((-1) ** i) * gmpy2.bincoef(j_top - m + alpha0 + m, j_top - m - i) / gmpy2.factorial(i)
                out[i] += pref * coef * bp
            bp *= beta
    return out


def _mp_poly_coeffs(recipe):
    """Coefficients of p_j / q_j rebuilt in MPFR arithmetic."""
    import gmpy2

    key = recipe
    got = _mp_coeff_cache.get(key)
    if got is not None:
        return got
    gmpy2.get_context().precision = _MP_PRECISION + 40
    mp = gmpy2.mpfr
    kind, j, nu, a = recipe[0], recipe[1], recipe[2], mp(recipe[3])
    one = 1 - a * a
    if kind == "p":
        c = _mp_laguerre_block(j, nu, 0, a, j)
        out = [v / c[-1] for v in c]
    else:
        c_tilde = mp(recipe[4])
        deg = j + 1
        out = [mp(0)] * (deg + 1)
        blk = _mp_laguerre_block(j - 2, nu + 2, 0, a, deg)
        for i, v in enumerate(blk):
            if i + 1 <= deg:
                out[i + 1] += -4 / (1 + a * a) ** 2 * v
        blk = _mp_laguerre_block(j - 1, nu + 1, 0, a, deg)
        for i, v in enumerate(blk):
            out[i] += (2 * nu + 1) / (2 * (1 + a * a)) * v
            if i + 1 <= deg:
                out[i + 1] += -2 * one / (1 + a * a) * v
        blk = _mp_laguerre_block(j, nu, 0, a, deg)
        kappa = -one * (2 * j * a * a - 1) / (4 * a * a)
        for i, v in enumerate(blk):
            out[i] += kappa * v
            if i + 1 <= deg:
                out[i + 1] += v
        blk = _mp_laguerre_block(j, nu, 1, a, deg)
        for i, v in enumerate(blk):
            out[i] += -(1 - a ** 4) / (4 * a ** 4) * v
        out = [v / out[-1] for v in out]
        if recipe[4] != 0.0:
            pc = _mp_poly_coeffs(("p", j, nu, recipe[3]))
            out = [v + c_tilde * (pc[i] if i < len(pc) else 0) for i, v in enumerate(out)]
    gmpy2.get_context().precision = _MP_PRECISION
    _mp_coeff_cache[key] = out
    return out


def _mp_coeffs_for(poly):
    import gmpy2

    if poly.recipe is not None:
        return _mp_poly_coeffs(poly.recipe)
    return [gmpy2.mpfr(c) for c in poly.coeffs]


def _mp_ctx(nu, a):
    """Antisymmetric moment matrices of G_nu (plus the odd-case 1D moment
    vectors) on a fixed triangle mesh with full-precision nodes."""
    key = (nu, round(a, 15))
    ctx = _mp_cache.get(key)
    if ctx is not None:
        return ctx
    import gmpy2

    gmpy2.get_context().precision = _MP_PRECISION
    mp = gmpy2.mpfr
    pi = gmpy2.const_pi()
    aa = mp(a)
    one = 1 - aa * aa
    gam = gmpy2.sqrt(one) / aa
    s2g = gmpy2.sqrt(mp(2)) * gam
    pref = pi * aa * aa * one / 8

    order, width = 24, 0.5
    glx, glw = _mp_leggauss(order)
    gmpy2.get_context().precision = _MP_PRECISION
    npanels = int(math.ceil(_AXIS_CUT / width))
    step = mp(_AXIS_CUT) / npanels
    xs, ws = [], []
    for pidx in range(npanels):
        mid = step * pidx + step / 2
        half = step / 2
        for q in range(order):
            xs.append(mid + half * glx[q])
            ws.append(half * glw[q])
    n = len(xs)
    i15x, i15w = _mp_leggauss(15)
    gmpy2.get_context().precision = _MP_PRECISION

    def inner(lo, hi, shift, width):
        # integral of erf(shift-u) exp(-u^2) over [lo, hi], 0 <= lo <= hi
        panels = max(1, int(math.ceil(float(hi - lo) / width)))
        total = mp(0)
        pstep = (hi - lo) / panels
        for pidx in range(panels):
            mid = lo + pstep * pidx + pstep / 2
            half = pstep / 2
            for q in range(15):
                u = mid + half * i15x[q]
                total += half * i15w[q] * gmpy2.erf(shift - u) * gmpy2.exp(-u * u)
        return total

    two_over_sqrtpi = 2 / gmpy2.sqrt(pi)
    deg = _MOMENT_DEG
    # contributions with exp(-2(x^2+y^2)) x^k' y^l' below ~1e-46 of the peak
    # cannot move any certified digit; skip those pairs outright
    live_floor = -135.0
    moments = [[mp(0)] * (deg + 1) for _ in range(deg + 1)]
    gm = [mp(0)] * (deg + 1)
    gbm = [mp(0)] * (deg + 1)
    for i in range(n):
        xi = xs[i]
        x2 = xi * xi
        urow = [mp(0)] * (deg + 1)
        for jn in range(n):
            yij = xi + xs[jn]
            expo = -2 * (x2 + yij * yij)
            if float(expo) < live_floor:
                continue
            part = gmpy2.erf(gam * (yij - xi)) * gmpy2.erf(gam * (xi + yij))
            if nu:
                lo = s2g * xi
                hi = s2g * yij
                if float(lo) < 7.5:
                    hi_c = hi if float(hi) < 7.5 else mp(7.5)
                    s2 = -0.5 * float(expo)
                    iw = 0.45 if s2 <= 12.0 else (0.7 if s2 <= 20.0 else (1.2 if s2 <= 30.0 else 3.0))
                    part -= two_over_sqrtpi * inner(lo, hi_c, s2g * (xi + yij), iw)
            gv = pref * gmpy2.exp(expo) * part
            if nu:
                gv *= xi * yij
            wgv = ws[i] * ws[jn] * gv
            yp = mp(1)
            y2 = yij * yij
            for l in range(deg + 1):
                urow[l] += wgv * yp
                yp *= y2
        xp = mp(1)
        for k in range(deg + 1):
            for l in range(deg + 1):
                moments[k][l] += xp * urow[l]
            xp *= x2
    amat = [[moments[k][l] - moments[l][k] for l in range(deg + 1)] for k in range(deg + 1)]

    # one-dimensional g and Gbar moment vectors for the odd-case corrections
    sq8 = gmpy2.sqrt(pi * aa * aa * one / 8)
    b = gmpy2.sqrt(2 * one) / aa
    c1 = pi * aa * aa * one / mp(2) ** mp("3.5")
    c2 = pi ** mp("1.5") * aa * aa * one / mp(2) ** mp("4.5")
    for i in range(n):
        t = xs[i]
        t2 = t * t
        e2 = gmpy2.exp(-2 * t2)
        gval = sq8 * e2
        if nu:
            gval *= t * gmpy2.erf(s2g * t)
        if nu == 1:
            g1 = pi * aa * aa * one ** mp("1.5") / 32 * t * e2 * gmpy2.erf(
                gmpy2.sqrt(2 * one / (aa * aa)) * t
            )
            g2 = (
                pi * aa * aa * one ** mp("1.5") / (16 * gmpy2.sqrt(1 + aa * aa))
                * t
                * gmpy2.exp(-4 * t2 / (1 + aa * aa))
                * gmpy2.erf(gmpy2.sqrt(2 * one / (aa * aa * (1 + aa * aa))) * t)
            )
            gbval = g1 - g2
        else:
            cut = 8 + b * t
            panels = max(4, int(math.ceil(float(cut) / 0.5)))
            pstep = cut / panels
            total = mp(0)
            for pidx in range(panels):
                mid = pstep * pidx + pstep / 2
                half = pstep / 2
                for q in range(15):
                    u = mid + half * i15x[q]
                    total += half * i15w[q] * gmpy2.erf(aa * u) * (
                        gmpy2.exp(-((u - b * t) ** 2)) + gmpy2.exp(-((u + b * t) ** 2))
                    )
            gbval = e2 * (c1 * total - c2)
        wp = ws[i]
        xp = mp(1)
        for k in range(deg + 1):
            gm[k] += wp * xp * gval
            gbm[k] += wp * xp * gbval
            xp *= t2
    ctx = {
        "A": amat,
        "deg": deg,
        "gm": gm,
        "gbm": gbm,
        "gbar": sq8 * gmpy2.sqrt(pi / 2) * gmpy2.sqrt(one / (2 * pi)) ** nu / 2,
    }
    _mp_cache[key] = ctx
    return ctx


def _mp_product(nu, a, f, g, odd):
    import gmpy2

    gmpy2.get_context().precision = _MP_PRECISION
    mp = gmpy2.mpfr
    ctx = _mp_ctx(nu, a)
    if max(f.degree, g.degree) > ctx["deg"]:
        raise SizeLimitError(
            f"multiprecision skew products support degree <= {ctx['deg']} in t"
        )
    amat = ctx["A"]
    fc = _mp_coeffs_for(f)
    gc = _mp_coeffs_for(g)
    total = mp(0)
    for k, fk in enumerate(fc):
        for l, gl in enumerate(gc):
            total += fk * gl * amat[k][l]
    if odd:
        fg = sum(fk * ctx["gm"][k] for k, fk in enumerate(fc))
        fgb = sum(fk * ctx["gbm"][k] for k, fk in enumerate(fc))
        gg = sum(gl * ctx["gm"][l] for l, gl in enumerate(gc))
        ggb = sum(gl * ctx["gbm"][l] for l, gl in enumerate(gc))
        total -= (fg * ggb - gg * fgb) / ctx["gbar"]
    return float(total)
