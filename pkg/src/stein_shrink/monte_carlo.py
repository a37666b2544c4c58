"""Seeded Monte Carlo: cloud simulation, empirical risk, paired risk-difference
estimation with common random numbers, and the exceedance probability.

Sampling happens in the reduced two-coordinate system (one normal plus one
chi-square draw per replication), so cost is independent of the dimension p.
A full-vector sampling path exists solely so the two routes can be checked
against each other.

Replications are split into fixed-size chunks; each chunk owns an RNG stream
derived deterministically from (seed, operation tag, chunk index), and chunk
results are reduced in chunk order.  Output is therefore bit-identical for a
given (config, n) regardless of how many workers execute the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import ProblemConfig, ZPoint, z_reduce
from .estimators import EstimatorSpec, Kind, shrink_factor
from .special import stream

__all__ = [
    "RiskEstimate",
    "CloudSample",
    "simulate_cloud",
    "estimate_risk_mc",
    "estimate_delta_mc",
    "estimate_exceedance_prob",
]

CHUNK_SIZE = 1 << 19

# Operation tags keep the streams of distinct operations disjoint.
_TAG_CLOUD = 1
_TAG_RISK = 2
_TAG_DELTA = 3
_TAG_EXCEED = 4
_TAG_RISK_FULL = 5


@dataclass(frozen=True)
class RiskEstimate:
    mean: float
    stderr: float
    n: int


@dataclass(frozen=True)
class CloudSample:
    points: list
    config: ProblemConfig


def _chunk_rng(seed: int, tag: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([seed, tag, index]))
    )


def _map_chunks(seed, tag, n, chunk_fn, workers=1):
    """Run chunk_fn(rng, count) over fixed-size chunks; results in chunk order."""
    jobs = []
    start = 0
    index = 0
    while start < n:
        jobs.append((index, min(CHUNK_SIZE, n - start)))
        start += CHUNK_SIZE
        index += 1

    def run(job):
        i, m = job
        return chunk_fn(_chunk_rng(seed, tag, i), m)

    if workers <= 1:
        return [run(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(run, jobs))


def _sample_z(rng, p, theta_norm, m):
    """m reduced observations: x1 ~ N(theta_norm, 1), r2 ~ chi^2_{p-1}."""
    x1 = theta_norm + rng.standard_normal(m)
    r2 = rng.chisquare(p - 1, m) if p >= 2 else np.zeros(m)
    return x1, r2


def _loss_z(spec, x1, r2, theta_norm, p):
    norm_sq = x1 * x1 + r2
    f = shrink_factor(spec, norm_sq, p)
    d = f * x1 - theta_norm
    return d * d + f * f * r2


def _moments_to_estimate(total, total_sq, n):
    mean = total / n
    var = max(0.0, (total_sq - total * total / n) / (n - 1))
    return RiskEstimate(mean=mean, stderr=math.sqrt(var / n), n=n)


def simulate_cloud(config: ProblemConfig, n: int) -> CloudSample:
    """n independent reduced observations; bit-identical for a given seed."""
    if config.p < 2:
        raise ValueError(f"cloud simulation requires p >= 2, got p={config.p}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")

    def chunk(rng, m):
        x1, r2 = _sample_z(rng, config.p, config.theta_norm, m)
        return x1, np.sqrt(r2)

    parts = _map_chunks(config.seed, _TAG_CLOUD, n, chunk)
    points = [
        ZPoint(float(x), float(r))
        for xs, rs in parts
        for x, r in zip(xs, rs)
    ]
    return CloudSample(points=points, config=config)


def estimate_risk_mc(
    config: ProblemConfig,
    spec: EstimatorSpec,
    n: int,
    via_full_vectors: bool = False,
    workers: int = 1,
) -> RiskEstimate:
    """Empirical risk of the estimator: mean squared error over n replications."""
    if config.p < 2:
        raise ValueError(f"risk estimation requires p >= 2, got p={config.p}")
    if n < 2:
        raise ValueError(f"need n >= 2 for a standard error, got {n}")
    p, t = config.p, config.theta_norm

    if via_full_vectors:
        theta = np.zeros(p)
        theta[0] = t

        def chunk(rng, m):
            x = theta + rng.standard_normal((m, p))
            if t > 0:
                z = np.array([z_reduce(row, theta).as_array() for row in x])
                x1, r2 = z[:, 0], z[:, 1] ** 2
                loss = _loss_z(spec, x1, r2, t, p)
            else:
                norm_sq = np.einsum("ij,ij->i", x, x)
                f = shrink_factor(spec, norm_sq, p)
                d = f[:, None] * x - theta
                loss = np.einsum("ij,ij->i", d, d)
            return float(loss.sum()), float((loss * loss).sum())

        tag = _TAG_RISK_FULL
    else:

        def chunk(rng, m):
            x1, r2 = _sample_z(rng, p, t, m)
            loss = _loss_z(spec, x1, r2, t, p)
            return float(loss.sum()), float((loss * loss).sum())

        tag = _TAG_RISK

    parts = _map_chunks(config.seed, tag, n, chunk, workers)
    total = sum(s for s, _ in parts)
    total_sq = sum(ss for _, ss in parts)
    return _moments_to_estimate(total, total_sq, n)


def estimate_delta_mc(
    config: ProblemConfig, spec, n: int, workers: int = 1
) -> RiskEstimate:
    """Paired risk-difference estimate: loss(identity) - loss(spec) on common draws.

    `spec` may be an EstimatorSpec or a bare shrinkage constant c (ShrinkC).
    Pairing on the same reduced observation cancels most of the sampling
    variance of differencing two independent risk estimates.
    """
    if not isinstance(spec, EstimatorSpec):
        spec = EstimatorSpec.shrink(float(spec))
    if config.p < 2:
        raise ValueError(f"delta estimation requires p >= 2, got p={config.p}")
    if n < 2:
        raise ValueError(f"need n >= 2 for a standard error, got {n}")
    p, t = config.p, config.theta_norm
    identity = EstimatorSpec.identity()

    def chunk(rng, m):
        x1, r2 = _sample_z(rng, p, t, m)
        d = _loss_z(identity, x1, r2, t, p) - _loss_z(spec, x1, r2, t, p)
        return float(d.sum()), float((d * d).sum())

    parts = _map_chunks(config.seed, _TAG_DELTA, n, chunk, workers)
    total = sum(s for s, _ in parts)
    total_sq = sum(ss for _, ss in parts)
    return _moments_to_estimate(total, total_sq, n)


def estimate_exceedance_prob(
    config: ProblemConfig, n: int, workers: int = 1
) -> RiskEstimate:
    """Empirical P(|X| >= |theta|), with a binomial standard error."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    p, t = config.p, config.theta_norm
    thresh = t * t

    def chunk(rng, m):
        x1, r2 = _sample_z(rng, p, t, m)
        return float(np.count_nonzero(x1 * x1 + r2 >= thresh)), 0.0

    parts = _map_chunks(config.seed, _TAG_EXCEED, n, chunk, workers)
    hits = sum(s for s, _ in parts)
    phat = hits / n
    return RiskEstimate(mean=phat, stderr=math.sqrt(phat * (1 - phat) / n), n=n)
