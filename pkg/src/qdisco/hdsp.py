"""Exact densest subgraph with signed node weights (HDSP-PN).

Maximizes ``(|E(S)| + sum_{v in S} w_v) / |S|`` over nonempty ``S`` by
Dinkelbach iteration on the parametric objective

    F_g(S) = |E(S)| + sum_{v in S} (w_v - g),

each step of which is a single minimum s-t cut.  With ``w = 0`` this is the
classic densest subgraph problem.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .graph import Graph
from .maxflow import FlowNetwork, solve_cut

DECISION_TOL = 1e-9


class HDSPResult(NamedTuple):
    nodes: np.ndarray
    value: float
    ratios: list[float]


class HdspNetwork:
    """Cut network for one graph, reused across weight vectors and guesses.

    Nodes ``0..n-1`` are the graph nodes, ``n`` is the source and ``n+1`` the
    sink.  Each graph edge is a pair of opposite unit arcs; every node has
    one arc from the source and one to the sink whose capacities carry the
    positive / negative part of its terminal coefficient.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        n, m = graph.n, graph.m
        s, t = n, n + 1
        v = np.arange(n, dtype=np.int64)
        tails = np.concatenate([graph.edges[:, 0], np.full(n, s), v])
        heads = np.concatenate([graph.edges[:, 1], v, np.full(n, t)])
        self._edge_caps = np.ones(m)
        self._rev = np.concatenate([self._edge_caps, np.zeros(2 * n)])
        self._base = FlowNetwork(n + 2, s, t, tails, heads, np.zeros(m + 2 * n))
        self._deg = graph.degrees.astype(np.float64)

    def ratio(self, w: np.ndarray, mask: np.ndarray) -> float:
        size = int(mask.sum())
        return (self.graph.induced_edge_count(mask) + float(w[mask].sum())) / size

    def margin(self, w: np.ndarray, g: float, mask: np.ndarray) -> float:
        return self.graph.induced_edge_count(mask) + float((w[mask] - g).sum())

    def decision(self, w: np.ndarray, g: float) -> tuple[np.ndarray, float]:
        """Maximizer of ``F_g`` as a node mask, and ``max(0, F_g)``.

        ``2 F_g(S) = sum_S deg(v) - cut(S, V-S) + sum_S 2 (w_v - g)``, so
        maximizing ``F_g`` is minimizing ``cut + sum_S a_v`` with
        ``a_v = 2g - 2w_v - deg(v)``: a positive ``a_v`` is paid on the arc to
        the sink, a negative one is paid (as ``-a_v``) on the arc from the
        source when ``v`` is left out.
        """
        n = self.graph.n
        a = 2.0 * g - 2.0 * w - self._deg
        caps = np.concatenate([self._edge_caps, np.maximum(-a, 0.0), np.maximum(a, 0.0)])
        _, side, _ = solve_cut(self._base.with_capacities(caps, self._rev))
        mask = side[:n]
        if not mask.any():
            return mask, 0.0
        f = self.margin(w, g, mask)
        if f <= 0.0:
            return np.zeros(n, dtype=bool), 0.0
        return mask, f

    def solve(self, w: np.ndarray, init: Sequence[int] | None = None,
              tol: float = DECISION_TOL) -> HDSPResult:
        n = self.graph.n
        w = np.asarray(w, dtype=np.float64)
        starts = [np.zeros(n, dtype=bool), np.ones(n, dtype=bool)]
        starts[0][int(np.argmax(w))] = True
        if init is not None and len(init):
            m0 = np.zeros(n, dtype=bool)
            m0[np.asarray(init, dtype=np.int64)] = True
            starts.append(m0)
        ratios = [self.ratio(w, m) for m in starts]
        best = int(np.argmax(ratios))
        mask, g = starts[best], ratios[best]
        history = [g]
        while True:
            cand, margin = self.decision(w, g)
            if margin <= tol:
                break
            g_new = self.ratio(w, cand)
            if not g_new > g:
                break
            mask, g = cand, g_new
            history.append(g)
        return HDSPResult(np.flatnonzero(mask), g, history)


def _weights(graph: Graph, w) -> np.ndarray:
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (graph.n,):
        raise ValueError(f"need {graph.n} node weights, got {w.shape}")
    return w


def hdsp_decision(graph: Graph, w, g: float) -> tuple[np.ndarray, float]:
    """Node set maximizing ``F_g`` (empty if no set is positive) and its margin."""
    mask, margin = HdspNetwork(graph).decision(_weights(graph, w), float(g))
    return np.flatnonzero(mask), margin


def hdsp_solve(graph: Graph, w, init: Sequence[int] | None = None,
               tol: float = DECISION_TOL) -> HDSPResult:
    """Exact HDSP-PN optimum: ``nodes`` attains the maximum ratio ``value``.

    ``ratios`` is the strictly increasing sequence of Dinkelbach guesses.
    ``init`` optionally seeds the first guess with a known subset.
    """
    if graph.n < 1:
        raise ValueError("graph must have at least one node")
    return HdspNetwork(graph).solve(_weights(graph, w), init=init, tol=tol)


def densest_subgraph(graph: Graph) -> tuple[np.ndarray, float]:
    """Exact densest subgraph ``(S*, d*)``."""
    res = hdsp_solve(graph, np.zeros(graph.n))
    return res.nodes, res.value
