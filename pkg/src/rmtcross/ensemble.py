"""Monte Carlo machinery for the crossover ensemble.

Samplers for the two equivalent matrix representations, batched spectral
histograms, Heine-formula estimators of the skew-orthogonal polynomials,
and the large-coupling factorization test.

Randomness is counter-based (Philox) with one independent substream per
(seed, stream index); Gaussians come from Box-Muller on fixed-length
uniform draws, so a given (seed, streams) pair reproduces its output
bit-for-bit regardless of execution interleaving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import TransitionParams

_CHUNK = 20000


@dataclass(frozen=True)
class SamplerConfig:
    model: str  # "two_matrix" | "three_matrix"
    params: TransitionParams
    samples: int
    seed: int
    streams: int = 1

    def __post_init__(self):
        if self.model not in ("two_matrix", "three_matrix"):
            raise DomainError(f"unknown model {self.model!r}")
        if self.samples < 1:
            raise DomainError("samples must be positive")
        if self.streams < 1:
            raise DomainError("streams must be positive")
        if self.model == "two_matrix" and not 0.0 < self.params.a < 1.0:
            raise DomainError("the two-matrix model requires 0 < a < 1")


@dataclass
class Histogram:
    lo: float
    hi: float
    bins: int
    counts: np.ndarray
    total_values: int
    samples: int
    per_matrix: int  # values accumulated per matrix (n for spectra, 1 for minima)

    @property
    def width(self):
        return (self.hi - self.lo) / self.bins

    @property
    def edges(self):
        return np.linspace(self.lo, self.hi, self.bins + 1)

    @property
    def centers(self):
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def density(self):
        """Counts scaled so the histogram integrates to ~per_matrix."""
        return self.counts / (self.samples * self.width)

    def poisson_err(self):
        return np.sqrt(self.counts) / (self.samples * self.width)


def stream_generator(seed, stream):
    """Counter-based substream: Philox keyed by (seed, stream index)."""
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def normals(gen, count):
    """count standard normals by Box-Muller from 2*ceil(count/2) uniforms."""
    half = (count + 1) // 2
    u1 = 1.0 - gen.random(half)  # (0, 1]
    u2 = gen.random(half)
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * half)
    out[0::2] = r * np.cos(2.0 * math.pi * u2)
    out[1::2] = r * np.sin(2.0 * math.pi * u2)
    return out[:count]


def _antisym_from_uptri(z, dim):
    """Batch of antisymmetric matrices from strict upper-triangle entries."""
    count = z.shape[0]
    iu = np.triu_indices(dim, 1)
    m = np.zeros((count, dim, dim))
    m[:, iu[0], iu[1]] = z
    m -= np.transpose(m, (0, 2, 1))
    return m


def _sample_two_batch(params, gen, count):
    n, nu, a = params.n, params.nu, params.a
    dim = params.dim
    ntri = dim * (dim - 1) // 2
    nw = n * (n + nu)
    draws = normals(gen, count * (ntri + nw)).reshape(count, ntri + nw)
    m = _antisym_from_uptri(0.5 * a * draws[:, :ntri], dim)
    w = 0.5 * math.sqrt(1.0 - a * a) * draws[:, ntri:].reshape(count, n, n + nu)
    m[:, :n, n:] += w
    m[:, n:, :n] -= np.transpose(w, (0, 2, 1))
    return m

def _sample_three_batch(params, gen, count):
    n, nu, a = params.n, params.nu, params.a
    dim = params.dim
    na = n * (n - 1) // 2
    nb = (n + nu) * (n + nu - 1) // 2
    nw = n * (n + nu)
    draws = 0.5 * normals(gen, count * (na + nb + nw)).reshape(count, na + nb + nw)
    m = np.zeros((count, dim, dim))
    if n > 1:
        iu = np.triu_indices(n, 1)
        m[:, iu[0], iu[1]] = a * draws[:, :na]
    if n + nu > 1:
        iu = np.triu_indices(n + nu, 1)
        m[:, n + iu[0], n + iu[1]] = a * draws[:, na:na + nb]
    m -= np.transpose(m, (0, 2, 1))
    w = draws[:, na + nb:].reshape(count, n, n + nu)
    m[:, :n, n:] += w
    m[:, n:, :n] -= np.transpose(w, (0, 2, 1))
    return m


_BATCHERS = {"two_matrix": _sample_two_batch, "three_matrix": _sample_three_batch}


def sample_two_matrix(params, gen):
    """One realization of the real antisymmetric matrix M with J = iM,
    drawn from the two-matrix model (H plus chiral block W)."""
    return _sample_two_batch(params, gen, 1)[0]


def sample_three_matrix(params, gen):
    """One realization from the three-matrix representation i[[aA, W], [-W^T, aB]]."""
    return _sample_three_batch(params, gen, 1)[0]


def batch_singular_values(mats, nu):
    """Singular values (descending) of a batch of antisymmetric matrices.

    Eigenvalues of -M^2 are paired, the nu smallest dropped as exact zero
    modes, each pair averaged and square-rooted.
    """
    ev = np.linalg.eigvalsh(-np.matmul(mats, mats))
    ev = np.clip(ev[:, nu:], 0.0, None)
    lam = np.sqrt(0.5 * (ev[:, 0::2] + ev[:, 1::2]))
    return lam[:, ::-1]


def _accumulate(config, lo, hi, bins, reducer):
    counts = np.zeros(bins, dtype=np.int64)
    total = 0
    batcher = _BATCHERS[config.model]
    per_stream = [config.samples // config.streams] * config.streams
    per_stream[-1] += config.samples - sum(per_stream)
    for stream, todo in enumerate(per_stream):
        gen = stream_generator(config.seed, stream)
        done = 0
        while done < todo:
            count = min(_CHUNK, todo - done)
            mats = batcher(config.params, gen, count)
            vals = reducer(batch_singular_values(mats, config.params.nu))
            c, _ = np.histogram(vals, bins=bins, range=(lo, hi))
            counts += c
            total += vals.size
            done += count
    return counts, total


def mc_density_histogram(config, lo, hi, bins):
    """Histogram of all n singular values per sampled matrix."""
    counts, total = _accumulate(config, lo, hi, bins, lambda lam: lam.ravel())
    return Histogram(lo, hi, bins, counts, total, config.samples, config.params.n)


def mc_smallest_histogram(config, lo, hi, bins):
    """Histogram of the smallest singular value per sampled matrix."""
    counts, total = _accumulate(config, lo, hi, bins, lambda lam: lam[:, -1])
    return Histogram(lo, hi, bins, counts, total, config.samples, 1)


def heine_mc(j, nu, a, x, samples, seed, which="p", c=0.0, streams=1):
    """Monte Carlo estimate of p_j(x) or q_j(x) from characteristic polynomials.

    p: mean over the (j, nu) ensemble of x^-nu det(x - J) = prod (x^2 - lam_k^2);
    q: the same times (x^2 + Tr J^2 / 2 + c).  Returns (estimate, std_error)
    with shapes following x.
    """
    if j > 6:
        raise DomainError("Heine estimates are limited to j <= 6 (variance growth)")
    if which not in ("p", "q"):
        raise DomainError(f"which must be 'p' or 'q', got {which!r}")
    scalar_in = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    x2 = (x * x)[None, :]
    if j == 0:
        est = np.ones_like(x) if which == "p" else x * x + c
        if scalar_in:
            return float(est[0]), 0.0
        return est, np.zeros_like(est)
    params = TransitionParams(j, nu, a)
    acc = np.zeros(x.size)
    acc2 = np.zeros(x.size)
    total = 0
    per_stream = [samples // streams] * streams
    per_stream[-1] += samples - sum(per_stream)
    for stream, todo in enumerate(per_stream):
        gen = stream_generator(seed, stream)
        done = 0
        while done < todo:
            count = min(_CHUNK, todo - done)
            mats = _sample_two_batch(params, gen, count)
            lam2 = batch_singular_values(mats, nu) ** 2
            dets = np.prod(x2[:, None, :] - lam2[:, :, None], axis=1).reshape(count, x.size)
            if which == "q":
                dets *= lam2.sum(axis=1)[:, None] + x2 + c
            acc += dets.sum(axis=0)
            acc2 += (dets * dets).sum(axis=0)
            total += count
            done += count
    mean = acc / total
    var = np.clip(acc2 / total - mean * mean, 0.0, None)
    err = np.sqrt(var / total)
    if scalar_in:
        return float(mean[0]), float(err[0])
    return mean, err


def sample_gaoe_block(dim, gen, count=1):
    """Batch of GAOE blocks: antisymmetric with upper entries N(0, 1/4)."""
    ntri = dim * (dim - 1) // 2
    z = 0.5 * normals(gen, count * ntri).reshape(count, ntri)
    return _antisym_from_uptri(z, dim)


def ks_two_sample(x, y):
    """Two-sample Kolmogorov-Smirnov statistic."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    allv = np.concatenate([x, y])
    cx = np.searchsorted(x, allv, side="right") / x.size
    cy = np.searchsorted(y, allv, side="right") / y.size
    return float(np.abs(cx - cy).max())


@dataclass(frozen=True)
class SplitCompareResult:
    statistic: float
    critical_1pct: float

    @property
    def passed(self):
        return self.statistic < self.critical_1pct


def mc_split_compare(n, nu, a_large, samples, seed):
    """Factorization test at large coupling.

    Compares pooled singular values of J/a from the three-matrix sampler
    with the union of singular values of two independent GAOE blocks of
    sizes n and n+nu (parity zero modes dropped from both sides), via a
    two-sample KS statistic against the 1% critical value.
    """
    params = TransitionParams(n, nu, float(a_large))
    gen = stream_generator(seed, 0)
    vals_model = []
    done = 0
    while done < samples:
        count = min(_CHUNK, samples - done)
        mats = _sample_three_batch(params, gen, count)
        vals_model.append(batch_singular_values(mats, nu).ravel() / a_large)
        done += count
    gen2 = stream_generator(seed, 1)
    vals_split = []
    done = 0
    while done < samples:
        count = min(_CHUNK, samples - done)
        lam_a = batch_singular_values(sample_gaoe_block(n, gen2, count), n % 2)
        lam_b = batch_singular_values(sample_gaoe_block(n + nu, gen2, count), (n + nu) % 2)
        vals_split.append(np.concatenate([lam_a.ravel(), lam_b.ravel()]))
        done += count
    x = np.concatenate(vals_model)
    y = np.concatenate(vals_split)
    stat = ks_two_sample(x, y)
    crit = 1.6276 * math.sqrt((x.size + y.size) / (x.size * y.size))
    return SplitCompareResult(stat, crit)
