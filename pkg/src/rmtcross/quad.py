"""Deterministic numerical integration.

Adaptive bisection with fixed 15-point Gauss-Legendre panels on finite
intervals, truncated rules for integrands dominated by a Gaussian factor on
half-line and quadrant domains, plus the fixed composite node helpers used
by the weight/kernel layers.  Node placement is deterministic throughout, so
results are bit-reproducible for a fixed spec.

Integrands must accept an ndarray of nodes and evaluate elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

_GL15_X, _GL15_W = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-11
    rel_tol: float = 1e-9
    max_depth: int = 48
    truncation_margin: float = 7.0

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise DomainError("tolerances must be positive")
        if self.max_depth > 60 or self.max_depth < 1:
            raise DomainError("max_depth must lie in [1, 60]")
        if self.truncation_margin < 6.0:
            raise DomainError("truncation_margin must be at least 6")


DEFAULT_SPEC = QuadratureSpec()


def panel_nodes(lo, hi):
    """15-point Gauss-Legendre nodes and weights mapped to [lo, hi]."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return mid + half * _GL15_X, half * _GL15_W


def _gl15(f, lo, hi):
    x, w = panel_nodes(lo, hi)
    return float(np.dot(w, np.asarray(f(x), dtype=float)))


def integrate_finite(f, lo, hi, spec=DEFAULT_SPEC):
    """Adaptive bisection with 15-point Gauss-Legendre panels.

    A panel is accepted when |GL(panel) - GL(left half) - GL(right half)|
    falls below its width-proportional share of max(abs_tol,
    rel_tol * |estimate|).  Raises ConvergenceError (carrying the best
    estimate) if max_depth is exhausted anywhere.
    """
    if lo > hi:
        raise DomainError(f"integration bounds out of order: [{lo}, {hi}]")
    if lo == hi:
        return 0.0
    width = hi - lo
    estimate = _gl15(f, lo, hi)
    total = abs(estimate)
    acc = 0.0
    stack = [(lo, hi, estimate, 0)]
    while stack:
        p_lo, p_hi, p_val, depth = stack.pop()
        mid = 0.5 * (p_lo + p_hi)
        left = _gl15(f, p_lo, mid)
        right = _gl15(f, mid, p_hi)
        err = abs(left + right - p_val)
        share = (p_hi - p_lo) / width
        tol = max(spec.abs_tol, spec.rel_tol * max(total, abs(acc))) * share
        if err <= tol or (p_hi - p_lo) < 1e-15 * width:
            acc += left + right
            continue
        if depth >= spec.max_depth:
            best = acc + left + right + sum(v for (_, _, v, _) in stack)
            raise ConvergenceError(
                f"quadrature depth {spec.max_depth} exhausted on [{p_lo}, {p_hi}]",
                estimate=best,
                error=err,
            )
        stack.append((p_lo, mid, left, depth + 1))
        stack.append((mid, p_hi, right, depth + 1))
        total = max(total, abs(acc) + abs(left) + abs(right))
    return acc


def integrate_halfline_gaussian(f, decay, spec=DEFAULT_SPEC, extent=0.0):
    """Integral of f over [0, inf) for |f| <= poly * exp(-decay x^2).

    Truncates at L = truncation_margin / sqrt(decay) + extent, where extent
    is the largest kernel-argument magnitude supplied by the caller, then
    integrates [0, L] adaptively.  The discarded tail is below abs_tol by
    construction of the margin.
    """
    if decay <= 0.0:
        raise DomainError(f"decay must be positive, got {decay}")
    cut = spec.truncation_margin / math.sqrt(decay) + extent
    return integrate_finite(f, 0.0, cut, spec)


def integrate_quadrant(f, decay, spec=DEFAULT_SPEC, extent=0.0):
    """Tensorized half-line rule on [0, inf)^2 for Gaussian-dominated f(x, y).

    The fixed composite rule is refined (panel widths halved) until two
    successive resolutions agree within the spec tolerances.
    """
    if decay <= 0.0:
        raise DomainError(f"decay must be positive, got {decay}")
    cut = spec.truncation_margin / math.sqrt(decay) + extent
    prev = None
    width = 0.8
    for _ in range(6):
        x, wx = composite_nodes(np.arange(0.0, cut + width, width).clip(max=cut))
        val = float(wx @ np.asarray(f(x[:, None], x[None, :]), dtype=float) @ wx)
        if prev is not None and abs(val - prev) <= max(spec.abs_tol, spec.rel_tol * abs(val)):
            return val
        prev = val
        width *= 0.5
    raise ConvergenceError("quadrant rule failed to stabilize", estimate=prev, error=None)


# ---------------------------------------------------------------------------
# fixed composite rules (deterministic node placement for cached meshes)
# ---------------------------------------------------------------------------

def composite_nodes(edges):
    """Flattened 15-point GL nodes/weights for the panels defined by edges."""
    edges = np.asarray(edges, dtype=float)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)[:, None]
    mid = 0.5 * (hi + lo)[:, None]
    nodes = (mid + half * _GL15_X[None, :]).ravel()
    weights = (half * _GL15_W[None, :]).ravel()
    return nodes, weights


def panel_edges(lo, hi, max_width):
    """Uniform panel edges over [lo, hi] with width <= max_width."""
    n = max(1, int(math.ceil((hi - lo) / max_width)))
    return np.linspace(lo, hi, n + 1)


def refined_edges(lo, hi, center, min_width, base_width):
    """Panel edges over [lo, hi] geometrically refined toward center.

    Used to resolve weight-function transitions of width ~min_width sitting
    at y = center inside an otherwise smooth integrand.  An edge is placed
    exactly at center when it lies inside the interval.
    """
    edges = set(np.linspace(lo, hi, max(1, int(math.ceil((hi - lo) / base_width))) + 1))
    if lo < center < hi and min_width < base_width:
        w = base_width
        while w > min_width:
            w *= 0.5
            if center - w > lo:
                edges.add(center - w)
            if center + w < hi:
                edges.add(center + w)
        edges.add(center)
    return np.array(sorted(edges))
