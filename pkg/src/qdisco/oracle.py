"""Exhaustive ground-truth solvers and the Dam-k-S reduction gadget.

All three brute-force routines share one vectorized sweep over the ``2^n``
node subsets: subsets with highest bit ``i`` are built from the subsets
without it, adding ``popcount(mask & adj_i)`` edges.  Densities are ratios
of integers with denominators at most ``n``, so distinct values are at
least ``1/n^2`` apart and float comparison picks the exact maximizer.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exceptions import InputError, InstanceTooLargeError
from .graph import Graph, QDiscoInstance, Solution, subset_stats

ORACLE_TOL = 1e-12


def _subset_tables(graph: Graph, max_n: int):
    n = graph.n
    if n > max_n:
        raise InstanceTooLargeError(f"n={n} exceeds exhaustive limit {max_n}")
    if n == 0:
        raise InputError("graph has no nodes")
    adj = np.zeros(n, dtype=np.int64)
    for u, v in graph.edges:
        adj[u] |= 1 << int(v)
        adj[v] |= 1 << int(u)
    total = 1 << n
    edges = np.zeros(total, dtype=np.int64)
    size = np.zeros(total, dtype=np.int64)
    for i in range(n):
        lo, hi = 1 << i, 1 << (i + 1)
        masks = np.arange(lo, hi, dtype=np.int64)
        edges[lo:hi] = edges[:lo] + np.bitwise_count(masks & adj[i])
        size[lo:hi] = size[:lo] + 1
    return edges, size


def _weight_sums(w: np.ndarray) -> np.ndarray:
    total = 1 << len(w)
    sums = np.zeros(total)
    for i, wi in enumerate(w):
        lo, hi = 1 << i, 1 << (i + 1)
        sums[lo:hi] = sums[:lo] + wi
    return sums


def _members(mask: int, n: int) -> np.ndarray:
    return np.array([i for i in range(n) if mask >> i & 1], dtype=np.int64)


def brute_qdisco(inst: QDiscoInstance, max_n: int = 20) -> Solution | None:
    """Exact Q-DISCO optimum, or ``None`` when no subset is feasible."""
    edges, size = _subset_tables(inst.graph, max_n)
    sums = _weight_sums(inst.c)
    size_f = np.maximum(size, 1).astype(np.float64)
    feasible = (size > 0) & (sums / size_f >= inst.theta - ORACLE_TOL)
    if not feasible.any():
        return None
    dens = np.where(feasible, edges / size_f, -1.0)
    best = int(np.argmax(dens))
    return subset_stats(inst, _members(best, inst.n), solver="exact")


def brute_hdsp(graph: Graph, w, max_n: int = 20) -> tuple[float, np.ndarray]:
    """Exact ``max (|E(S)| + w(S)) / |S|`` over nonempty ``S``."""
    w = np.asarray(w, dtype=np.float64)
    edges, size = _subset_tables(graph, max_n)
    sums = _weight_sums(w)
    vals = (edges[1:] + sums[1:]) / size[1:]
    best = int(np.argmax(vals))
    return float(vals[best]), _members(best + 1, graph.n)


def brute_densest(graph: Graph, max_n: int = 20) -> tuple[Fraction, np.ndarray]:
    """Exact densest subgraph as a rational value."""
    return brute_damks(graph, graph.n, max_n=max_n)


def brute_damks(graph: Graph, k: int, max_n: int = 16) -> tuple[Fraction, np.ndarray]:
    """Densest subgraph with at most ``k`` nodes, value as an exact fraction."""
    if k < 1:
        raise InputError("k must be positive")
    edges, size = _subset_tables(graph, max_n)
    ok = (size > 0) & (size <= k)
    dens = np.where(ok, edges / np.maximum(size, 1), -1.0)
    best = int(np.argmax(dens))
    return Fraction(int(edges[best]), int(size[best])), _members(best, graph.n)


def damks_gadget(graph: Graph, k: int) -> QDiscoInstance:
    """Q-DISCO instance encoding Dam-k-S on ``(graph, k)``.

    ``graph`` plus ``k`` isolated nodes; original nodes get agreement 0, the
    added ones agreement 1, and the threshold is 1/2.  A subset of ``graph``
    of density ``val`` and size at most ``k`` pads with as many isolated
    nodes to a feasible set of density ``val / 2``, and conversely.
    """
    if k < 1:
        raise InputError("k must be positive")
    n = graph.n
    extra = np.empty((0, 2), dtype=np.int64)
    labels = None
    if graph.labels is not None:
        taken = set(graph.labels)
        labels = list(graph.labels)
        i = 0
        while len(labels) < n + k:
            name = f"pad{i}"
            if name not in taken:
                labels.append(name)
            i += 1
    g2 = Graph(n + k, np.concatenate([graph.edges, extra]), labels=labels)
    c = np.concatenate([np.zeros(n), np.ones(k)])
    return QDiscoInstance(g2, c, 0.5)
