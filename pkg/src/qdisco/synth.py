"""Synthetic agreements and random graphs.

Randomness comes from numpy's PCG64 bit generator seeded with the given
integer, so a seed reproduces the same stream on every platform.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import InputError
from .graph import Graph

# (mean, spread) of the two halves; spread is a variance unless stddev=True
BIMODAL_HIGH = (0.1, 0.01)
BIMODAL_LOW = (-0.1, 0.1)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gen_bimodal_agreements(n: int, seed: int, stddev: bool = False) -> np.ndarray:
    """Nodes ``0..ceil(n/2)-1`` from N(0.1, 0.01), the rest from N(-0.1, 0.1).

    The second parameter is read as a variance; ``stddev=True`` reads it as
    a standard deviation instead.
    """
    if n < 2:
        raise InputError("need at least two nodes")
    rng = rng_for(seed)
    half = math.ceil(n / 2)
    out = np.empty(n)
    for sl, (mu, spread) in ((slice(0, half), BIMODAL_HIGH),
                             (slice(half, n), BIMODAL_LOW)):
        sd = spread if stddev else math.sqrt(spread)
        out[sl] = rng.normal(mu, sd, size=len(range(n)[sl]))
    return out


def gen_uniform_opinions(n: int, d: int, seed: int) -> np.ndarray:
    """``n x d`` opinion matrix with entries uniform in [-1, 1]."""
    if d < 1:
        raise InputError("dimension must be positive")
    return rng_for(seed).uniform(-1.0, 1.0, size=(n, d))


def _pairs_from_index(k: np.ndarray, n: int) -> np.ndarray:
    """Map lexicographic indices of pairs ``i < j`` back to ``(i, j)``."""
    rows, cols = np.triu_indices(n, 1)
    return np.stack([rows[k], cols[k]], axis=1)


def gen_gnm(n: int, m: int, seed: int) -> Graph:
    """Uniformly random simple graph with exactly ``m`` edges."""
    total = n * (n - 1) // 2
    if n < 0 or m < 0:
        raise InputError("n and m must be nonnegative")
    if m > total:
        raise InputError(f"m={m} exceeds n(n-1)/2={total}")
    rng = rng_for(seed)
    if m == 0:
        return Graph(n)
    if 2 * m > total:
        # dense: choose the edge set directly from the pair universe
        return Graph(n, _pairs_from_index(rng.choice(total, m, replace=False), n))

    # sparse: draw pairs until m distinct ones are collected; the accepted
    # set is a uniform m-subset because the scheme is exchangeable in pairs
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        need = m - len(keys)
        draw = rng.integers(0, n, size=(need + need // 8 + 16, 2))
        draw = draw[draw[:, 0] != draw[:, 1]]
        lo, hi = draw.min(axis=1), draw.max(axis=1)
        fresh = lo * n + hi
        fresh = fresh[~np.isin(fresh, keys)]
        _, first = np.unique(fresh, return_index=True)
        fresh = fresh[np.sort(first)][:need]
        keys = np.concatenate([keys, fresh])
    return Graph(n, np.stack([keys // n, keys % n], axis=1))
