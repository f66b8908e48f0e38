"""Named validation suites backing the command-line `suite` command.

Each suite returns a list of CheckResult rows; the CLI renders them as a
table and a summary CSV.  Sizes are chosen for interactive turnaround; the
full-tolerance versions of these properties live in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ensemble, jpdf, kernels, linalg, sop, weights
from .errors import DomainError
from .params import TransitionParams
from .quad import composite_nodes, panel_edges

SUITE_NAMES = ("skeworth", "weights", "jpdf-oracle", "pfaffian", "limits", "heine", "split")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    observed: float
    tolerance: float

    @property
    def passed(self):
        return abs(self.observed) <= self.tolerance


def run_suite(name, a=0.5, seed=1234, samples=None):
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    fn = {
        "skeworth": _suite_skeworth,
        "weights": _suite_weights,
        "jpdf-oracle": _suite_jpdf,
        "pfaffian": _suite_pfaffian,
        "limits": _suite_limits,
        "heine": _suite_heine,
        "split": _suite_split,
    }[name]
    return fn(a=a, seed=seed, samples=samples)


def _suite_skeworth(a=0.5, seed=None, samples=None, max_index=5):
    out = []
    for nu in (0, 1):
        even = [j for j in range(0, max_index + 1, 2)]
        odd = [j for j in range(1, max_index + 1, 2)]
        for indices, product, label in (
            (even, sop.skew_product_even, "even"),
            (odd, sop.skew_product_odd, "odd"),
        ):
            pairs = {j: (sop.p_poly(j, nu, a), sop.q_poly(j, nu, a), sop.norm_h(j, nu, a)) for j in indices}
            for j, (p, q, h) in pairs.items():
                v = product(p, q, nu, a, needed_abs=1e-6 * h / 4)
                out.append(CheckResult("skeworth", f"{label} <p{j},q{j}>/h-1 nu={nu}", v / h - 1.0, 1e-6))
            for j in indices:
                for k in indices:
                    if k <= j:
                        continue
                    scale = math.sqrt(pairs[j][2] * pairs[k][2])
                    for tag, f, g in (
                        ("pp", pairs[j][0], pairs[k][0]),
                        ("qq", pairs[j][1], pairs[k][1]),
                        ("pq", pairs[j][0], pairs[k][1]),
                    ):
                        v = product(f, g, nu, a, needed_abs=1e-8 * scale / 2)
                        out.append(
                            CheckResult("skeworth", f"{label} <{tag}> ({j},{k}) nu={nu}", v / scale, 1e-8)
                        )
        # odd-product side conditions: int p_j g = int q_j g = 0 for odd j
        nd, wt = composite_nodes(panel_edges(0.0, 6.5, 0.25))
        gv = weights.g_weight(nu, a, nd)
        for j in odd:
            scale = float(np.dot(wt * gv, np.abs(sop.p_poly(j, nu, a).eval_x(nd))))
            v = float(np.dot(wt * gv, sop.p_poly(j, nu, a).eval_x(nd)))
            out.append(CheckResult("skeworth", f"int p{j} g nu={nu}", v / scale, 1e-8))
            v = float(np.dot(wt * gv, sop.q_poly(j, nu, a).eval_x(nd)))
            out.append(CheckResult("skeworth", f"int q{j} g nu={nu}", v / scale, 1e-8))
    return out


def _suite_weights(a=0.5, seed=None, samples=None):
    out = []
    ys = (0.1, 0.7, 1.6)
    for nu in (0, 1):
        for y in ys:
            closed = weights.g_weight(nu, a, y)
            oracle = weights.g_weight_def_oracle(nu, a, y)
            out.append(CheckResult("weights", f"g closed-vs-def nu={nu} y={y}", closed - oracle, 1e-8))
        for (x, y) in ((0.2, 0.5), (0.8, 1.4), (0.3, 2.0)):
            closed = weights.G_weight(nu, a, x, y)
            oracle = weights.G_weight_def_oracle(nu, a, x, y)
            out.append(CheckResult("weights", f"G closed-vs-def nu={nu} ({x},{y})", closed - oracle, 1e-8))
        for y in ys:
            gb = weights.G_bar(nu, a, y)
            nd, wt = composite_nodes(panel_edges(0.0, 7.0, 0.25))
            quad_gb = float(np.dot(wt, weights.G_weight(nu, a, nd, np.full_like(nd, y))))
            out.append(CheckResult("weights", f"Gbar vs int G nu={nu} y={y}", gb - quad_gb, 1e-8))
        out.append(
            CheckResult("weights", f"gbar two forms nu={nu}", weights.g_bar(nu, a) - weights.g_bar_direct(nu, a), 1e-12)
        )
    return out


def _suite_jpdf(a=0.5, seed=None, samples=None):
    out = []
    for nu in (0, 1):
        for n in (2, 3):
            grid = (0.3, 0.9, 1.7)
            for x in grid:
                bf = jpdf.corr_Rk_bruteforce(n, 1, nu, a, [x])
                kv = kernels.density_R1(n, nu, a, x)
                out.append(CheckResult("jpdf-oracle", f"R1 n={n} nu={nu} x={x}", bf - kv, 1e-6))
            bf = jpdf.corr_Rk_bruteforce(n, 2, nu, a, [0.6, 1.3])
            kv = kernels.corr_R2(n, nu, a, 0.6, 1.3)
            out.append(CheckResult("jpdf-oracle", f"R2 n={n} nu={nu}", bf - kv, 1e-5))
            out.append(
                CheckResult("jpdf-oracle", f"norm n={n} nu={nu}", jpdf.jpdf_norm_check(n, nu, a) - 1.0, 1e-6)
            )
    return out


def _suite_pfaffian(a=None, seed=1234, samples=None):
    rng = np.random.default_rng(seed)
    out = []
    worst_rec = 0.0
    worst_det = 0.0
    for _ in range(samples or 100):
        n = int(rng.integers(1, 5)) * 2
        m = rng.standard_normal((n, n))
        m = m - m.T
        pf = linalg.pfaffian(m)
        rec = linalg.pfaffian_recursive(m)
        det = np.linalg.det(m)
        worst_rec = max(worst_rec, abs(pf - rec) / max(abs(rec), 1e-300))
        worst_det = max(worst_det, abs(pf * pf - det) / max(abs(det), 1e-300))
    out.append(CheckResult("pfaffian", "parlett-reid vs recursive (rel)", worst_rec, 1e-10))
    out.append(CheckResult("pfaffian", "pf^2 vs det (rel)", worst_det, 1e-8))
    return out


def _suite_limits(a=None, seed=None, samples=None):
    out = []
    grid = np.linspace(0.0, 3.0, 61)
    for nu in (0, 1):
        ref = kernels.density_chgoe_ref(2, nu, grid)
        d = np.abs(kernels.density_R1(2, nu, 1e-2, grid) - ref).max()
        out.append(CheckResult("limits", f"chgoe density n=2 nu={nu} (a=1e-2)", d, 1e-2))
        ref = kernels.density_gaoe_ref(2, nu, grid)
        d = np.abs(kernels.density_R1(2, nu, 1.0 - 1e-4, grid) - ref).max()
        out.append(CheckResult("limits", f"gaoe density n=2 nu={nu} (a=1-1e-4)", d, 1e-2))
        for j in (1, 3):
            pa = np.asarray(sop.p_poly(j, nu, 1e-4).coeffs)
            pl = np.asarray(sop.p_limit_chgoe(j, nu).coeffs)
            out.append(CheckResult("limits", f"p{j} chgoe coeffs nu={nu}", np.abs(pa - pl).max(), 1e-6))
            pa = np.asarray(sop.p_poly(j, nu, 1.0 - 1e-6).coeffs)
            pl = np.asarray(sop.p_limit_gaoe(j, nu).coeffs)
            out.append(CheckResult("limits", f"p{j} gaoe coeffs nu={nu}", np.abs(pa - pl).max(), 1e-4))
    return out


def _suite_heine(a=0.5, seed=1234, samples=None):
    samples = samples or 200000
    out = []
    for nu in (0, 1):
        for j in (1, 2):
            for x in (0.5, 1.0, 2.0):
                est, err = ensemble.heine_mc(j, nu, a, x, samples, seed=seed)
                exact = sop.p_poly(j, nu, a).eval_x(x)
                pull = (est - exact) / max(err, 1e-300)
                out.append(CheckResult("heine", f"p{j}({x}) nu={nu} pull", pull, 3.0))
    return out


def _suite_split(a=None, seed=1234, samples=None):
    samples = samples or 5000
    out = []
    r = ensemble.mc_split_compare(4, 0, 100.0, samples, seed)
    out.append(CheckResult("split", "a=100 n=4 nu=0 stat/crit", r.statistic / r.critical_1pct, 1.0))
    r = ensemble.mc_split_compare(3, 1, 100.0, samples, seed + 1)
    out.append(CheckResult("split", "a=100 n=3 nu=1 stat/crit", r.statistic / r.critical_1pct, 1.0))
    r = ensemble.mc_split_compare(4, 0, 1.0, samples, seed + 2)
    # negative control: the statistic must exceed the critical value at a=1
    out.append(CheckResult("split", "a=1 control crit/stat", r.critical_1pct / r.statistic, 1.0))
    return out
