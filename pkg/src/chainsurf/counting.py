"""Asymptotic counts of regular graphs with a girth constraint, and their Monte Carlo check.

The factor exp(-sum_{i<w} (n-1)^i / (2i)) is the limiting probability that a
uniform random n-regular pairing has no cycle shorter than w (cycle counts
are asymptotically independent Poisson with means (n-1)^i / (2i)).
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .graphs import MultiGraph, girth

CHUNK = 1000


def short_cycle_exponent(n: int, min_girth: int) -> float:
    """sum_{i=1}^{w-1} (n-1)^i / (2i)."""
    return sum((n - 1) ** i / (2.0 * i) for i in range(1, min_girth))


def girth_probability_limit(min_girth: int, n: int = 3) -> float:
    return math.exp(-short_cycle_exponent(n, min_girth))


def asymptotic_count(n: int, edge_count: int, min_girth: int) -> float:
    """log of exp(-sum_{i<w} (n-1)^i/(2i)) (2E)! / (2^E E! V! (n!)^V), V = 2E/n."""
    if n < 3 or min_girth < 3:
        raise DomainError("need n >= 3 and min_girth >= 3")
    E = int(edge_count)
    if E != edge_count or E < 1 or (2 * E) % n:
        raise DomainError(f"2E/n must be a positive integer (n={n}, E={edge_count})")
    V = 2 * E // n
    log_pairings = math.lgamma(2 * E + 1) - E * math.log(2.0) - math.lgamma(E + 1)
    log_labels = math.lgamma(V + 1) + V * math.lgamma(n + 1)
    return log_pairings - log_labels - short_cycle_exponent(n, min_girth)


def _chunk_hits(vertex_count, min_girth, trials, seed, chunk_index):
    rng = np.random.default_rng([seed, chunk_index])
    stubs = np.tile(np.arange(3 * vertex_count), (trials, 1))
    perm = rng.permuted(stubs, axis=1) // 3
    u, v = perm[:, 0::2], perm[:, 1::2]
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    simple = ~np.any(lo == hi, axis=1)
    keys = np.sort(lo * vertex_count + hi, axis=1)
    simple &= ~np.any(keys[:, 1:] == keys[:, :-1], axis=1)
    if min_girth <= 3:
        return int(simple.sum())
    hits = 0
    for row in np.nonzero(simple)[0]:
        g = MultiGraph(vertex_count, list(zip(lo[row].tolist(), hi[row].tolist())))
        if girth(g, limit=min_girth) >= min_girth:
            hits += 1
    return hits


def pairing_girth_probability(vertex_count: int, min_girth: int, trials: int, seed: int, workers: int = 1):
    """Fraction of uniform cubic pairings with girth >= min_girth, and its binomial standard error.

    Trials run in chunks of 1000, chunk c seeded by ``(seed, c)``, so the result
    does not depend on ``workers``.
    """
    if trials < 1000:
        raise DomainError(f"trials must be at least 1000, got {trials}")
    if vertex_count < 2 or vertex_count % 2:
        raise DomainError("vertex_count must be even and >= 2")
    if min_girth <= 1:
        return 1.0, 0.0
    sizes = [CHUNK] * (trials // CHUNK) + ([trials % CHUNK] if trials % CHUNK else [])
    jobs = [(vertex_count, min_girth, size, seed, c) for c, size in enumerate(sizes)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_chunk_hits, *zip(*jobs)))
    else:
        hits = sum(_chunk_hits(*job) for job in jobs)
    p = hits / trials
    return p, math.sqrt(p * (1.0 - p) / trials)
