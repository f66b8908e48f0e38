"""Command-line front end.

Subcommands compute analytic densities, correlation data, and
smallest-eigenvalue curves, run the Monte Carlo comparisons, and execute
the named validation suites.  Output is UTF-8 CSV with a `#`-prefixed
comment header echoing all parameters; every run appends a JSON-lines
provenance record next to its CSV.

Exit codes: 0 success, 2 domain/usage error, 3 quadrature convergence
error, 4 validation-suite failure.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import time

import numpy as np

from . import ensemble, jpdf, kernels, suites
from .errors import ConvergenceError, DomainError, RmtCrossError
from .params import TransitionParams


def _grid(text):
    try:
        lo, hi, pts = text.split(":")
        lo, hi, pts = float(lo), float(hi), int(pts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:points, got {text!r}") from exc
    if not (lo < hi and pts >= 2):
        raise argparse.ArgumentTypeError("grid requires lo < hi and points >= 2")
    return lo, hi, pts


def _git_describe():
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5, check=False,
        )
        return out.stdout.strip() or None
    except OSError:
        return None


def _write_csv(path, comments, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _record_meta(path, args, elapsed, rows):
    meta = {
        "command": args.command,
        "argv": sys.argv[1:],
        "seed": getattr(args, "seed", None),
        "git": _git_describe(),
        "elapsed_s": round(elapsed, 3),
        "rows": rows,
        "written": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    with open(path + ".meta.jsonl", "a", encoding="utf-8") as fh:
        fh.write(json.dumps(meta) + "\n")


def _param_comments(args):
    out = []
    for key in ("n", "nu", "a", "grid", "model", "samples", "bins", "seed", "streams", "order", "name"):
        if hasattr(args, key) and getattr(args, key) is not None:
            out.append(f"{key} = {getattr(args, key)}")
    return out


def _default_range(params):
    return 0.0, math_sqrt(params.dim) * 0.9 + 1.2


def math_sqrt(x):
    return float(np.sqrt(x))


def _cmd_density(args):
    lo, hi, pts = args.grid
    xs = np.linspace(lo, hi, pts)
    dens = kernels.density_R1(args.n, args.nu, args.a, xs)
    _write_csv(args.out, _param_comments(args), ["lambda", "density"], list(zip(xs.tolist(), dens.tolist())))
    return pts


def _cmd_density_mc(args):
    params = TransitionParams(args.n, args.nu, args.a)
    lo, hi = (args.range if args.range else _default_range(params))
    model = "two_matrix" if args.model == "two" else "three_matrix"
    cfg = ensemble.SamplerConfig(model, params, args.samples, args.seed, args.streams)
    hist = ensemble.mc_density_histogram(cfg, lo, hi, args.bins)
    rows = list(
        zip(
            hist.edges[:-1].tolist(),
            hist.edges[1:].tolist(),
            hist.density().tolist(),
            hist.poisson_err().tolist(),
        )
    )
    _write_csv(args.out, _param_comments(args), ["bin_lo", "bin_hi", "density", "poisson_err"], rows)
    return args.bins


def _cmd_smallest(args):
    lo, hi, pts = args.grid
    xs = np.linspace(lo, hi, pts)
    vals = kernels.smallest_p1_curve(args.n, args.nu, args.a, xs, order=args.order)
    rows = [(x, v, int(v >= 0.0)) for x, v in zip(xs.tolist(), np.atleast_1d(vals).tolist())]
    _write_csv(args.out, _param_comments(args), ["s", "p1_truncated", "valid"], rows)
    return pts


def _cmd_smallest_mc(args):
    params = TransitionParams(args.n, args.nu, args.a)
    lo, hi = (args.range if args.range else (0.0, 1.8))
    model = "two_matrix" if args.model == "two" else "three_matrix"
    cfg = ensemble.SamplerConfig(model, params, args.samples, args.seed, args.streams)
    hist = ensemble.mc_smallest_histogram(cfg, lo, hi, args.bins)
    rows = list(
        zip(
            hist.edges[:-1].tolist(),
            hist.edges[1:].tolist(),
            hist.density().tolist(),
            hist.poisson_err().tolist(),
        )
    )
    _write_csv(args.out, _param_comments(args), ["bin_lo", "bin_hi", "density", "poisson_err"], rows)
    return args.bins


def _cmd_sop(args):
    from .sop import norm_h, p_poly, q_poly

    p = p_poly(args.j, args.nu, args.a)
    q = q_poly(args.j, args.nu, args.a, args.ctilde)
    comments = _param_comments(args) + [f"h = {norm_h(args.j, args.nu, args.a)!r}"]
    rows = []
    for k in range(len(q.coeffs)):
        pc = p.coeffs[k] if k < len(p.coeffs) else 0.0
        rows.append((k, float(pc), float(q.coeffs[k])))
    _write_csv(args.out, comments, ["power_t", "p_coeff", "q_coeff"], rows)
    return len(rows)


def _cmd_jpdf_check(args):
    rows = []
    worst = 0.0
    for x in np.linspace(0.2, 2.2, args.points):
        bf = jpdf.corr_Rk_bruteforce(args.n, 1, args.nu, args.a, [x])
        kv = kernels.density_R1(args.n, args.nu, args.a, x)
        rows.append((float(x), kv, bf, bf - kv))
        worst = max(worst, abs(bf - kv))
    _write_csv(args.out, _param_comments(args), ["lambda", "kernel", "bruteforce", "diff"], rows)
    print(f"jpdf-check n={args.n} nu={args.nu} a={args.a}: worst |diff| = {worst:.3e}")
    if worst > 1e-6:
        raise DomainError(f"kernel-vs-jpdf mismatch {worst:.3e} exceeds 1e-6")
    return len(rows)


def _cmd_suite(args):
    results = suites.run_suite(args.name, a=args.a, seed=args.seed, samples=args.samples)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "pass" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        print(f"{r.name:<{width}}  observed={r.observed: .3e}  tol={r.tolerance:.1e}  {status}")
    print(f"suite {args.name}: {len(results) - failed}/{len(results)} checks passed")
    if args.out:
        rows = [(r.name, r.observed, r.tolerance, int(r.passed)) for r in results]
        _write_csv(args.out, _param_comments(args), ["check", "observed", "tolerance", "passed"], rows)
        _record_meta(args.out, args, 0.0, len(rows))
    if failed:
        for r in results:
            if not r.passed:
                print(
                    f"failed: {r.name}: observed {r.observed!r} exceeds tolerance {r.tolerance!r}",
                    file=sys.stderr,
                )
        return 4
    return 0


def _cmd_split_test(args):
    r = ensemble.mc_split_compare(args.n, args.nu, args.a, args.samples, args.seed)
    print(
        f"split-test n={args.n} nu={args.nu} a={args.a}: statistic={r.statistic:.5f} "
        f"critical(1%)={r.critical_1pct:.5f} -> {'pass' if r.passed else 'FAIL'}"
    )
    return 0 if r.passed else 4


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rmtcross",
        description="Pfaffian point-process analytics and Monte Carlo for the chGOE-GAOE crossover ensemble",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_params(p, n=True):
        if n:
            p.add_argument("--n", type=int, required=True, help="number of eigenvalue pairs")
            p.add_argument("--nu", type=int, choices=(0, 1), required=True, help="zero modes (matrix parity)")
        p.add_argument("--a", type=float, required=True, help="coupling constant")

    p = sub.add_parser("density", help="analytic spectral density on a grid")
    add_params(p)
    p.add_argument("--grid", type=_grid, required=True, help="lo:hi:points")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("density-mc", help="Monte Carlo spectral-density histogram")
    add_params(p)
    p.add_argument("--model", choices=("two", "three"), default="two")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--streams", type=int, default=1)
    p.add_argument("--range", type=lambda t: tuple(float(v) for v in t.split(":")), default=None,
                   help="lo:hi histogram range (default: parameter-based)")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_density_mc)

    p = sub.add_parser("smallest", help="truncated smallest-eigenvalue density curve")
    add_params(p)
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_smallest)

    p = sub.add_parser("smallest-mc", help="Monte Carlo smallest-eigenvalue histogram")
    add_params(p)
    p.add_argument("--model", choices=("two", "three"), default="two")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--streams", type=int, default=1)
    p.add_argument("--range", type=lambda t: tuple(float(v) for v in t.split(":")), default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_smallest_mc)

    p = sub.add_parser("sop", help="skew-orthogonal polynomial coefficients")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--nu", type=int, choices=(0, 1), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--ctilde", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_sop)

    p = sub.add_parser("jpdf-check", help="kernel density vs brute-force jpdf integration")
    add_params(p)
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_jpdf_check)

    p = sub.add_parser("suite", help="run a named validation suite")
    p.add_argument("--name", required=True, choices=suites.SUITE_NAMES)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_suite, direct=True)

    p = sub.add_parser("split-test", help="large-coupling factorization KS test")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nu", type=int, choices=(0, 1), required=True)
    p.add_argument("--a", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_split_test, direct=True)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        if getattr(args, "direct", False):
            return args.fn(args)
        rows = args.fn(args)
        _record_meta(args.out, args, time.time() - t0, rows)
        return 0
    except ConvergenceError as exc:
        print(f"convergence error: {exc} (best estimate {exc.estimate!r})", file=sys.stderr)
        return 3
    except (DomainError, RmtCrossError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
