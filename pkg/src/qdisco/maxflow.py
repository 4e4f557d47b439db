"""Exact s-t maximum flow / minimum cut with real capacities.

Dinic's algorithm (BFS level graph + blocking flow by iterative DFS),
compiled with numba.  A :class:`FlowNetwork` holds the arc structure in
CSR order; capacities can be swapped cheaply with
:meth:`FlowNetwork.with_capacities`, which is how the HDSP-PN solver reuses
one network across many cut queries.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from .exceptions import InputError

# Cut comparisons are absolute after rescaling so the largest capacity is
# at most this value.
MAX_CAPACITY = 1e6


@njit(cache=True, nogil=True)
def _bfs_levels(n, s, t, first, arc_ids, head, res, eps, level, queue):
    for i in range(n):
        level[i] = -1
    level[s] = 0
    qh = 0
    qt = 1
    queue[0] = s
    while qh < qt:
        u = queue[qh]
        qh += 1
        for k in range(first[u], first[u + 1]):
            a = arc_ids[k]
            v = head[a]
            if level[v] < 0 and res[a] > eps:
                level[v] = level[u] + 1
                queue[qt] = v
                qt += 1
    return level[t] >= 0


@njit(cache=True, nogil=True)
def _dinic(n, s, t, first, arc_ids, head, tail, res, eps):
    level = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    it = np.empty(n, dtype=np.int64)
    path = np.empty(n, dtype=np.int64)
    total = 0.0
    while _bfs_levels(n, s, t, first, arc_ids, head, res, eps, level, queue):
        for i in range(n):
            it[i] = first[i]
        depth = 0
        u = s
        while True:
            if u == t:
                push = res[path[0]]
                for i in range(1, depth):
                    if res[path[i]] < push:
                        push = res[path[i]]
                cut_at = -1
                for i in range(depth):
                    a = path[i]
                    res[a] -= push
                    res[a ^ 1] += push
                    if cut_at < 0 and res[a] <= eps:
                        cut_at = i
                total += push
                # retreat to the tail of the first saturated arc
                depth = cut_at
                u = tail[path[cut_at]]
                continue
            advanced = False
            while it[u] < first[u + 1]:
                a = arc_ids[it[u]]
                v = head[a]
                if res[a] > eps and level[v] == level[u] + 1:
                    path[depth] = a
                    depth += 1
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if u == s:
                    break
                level[u] = -1
                depth -= 1
                u = tail[path[depth]]
                it[u] += 1
    return total


@njit(cache=True, nogil=True)
def _residual_reach(n, s, first, arc_ids, head, res, eps):
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[s] = True
    stack[0] = s
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for k in range(first[u], first[u + 1]):
            a = arc_ids[k]
            v = head[a]
            if not seen[v] and res[a] > eps:
                seen[v] = True
                stack[top] = v
                top += 1
    return seen


class FlowNetwork:
    """Directed network with paired arcs.

    Arc ``i`` given to the constructor becomes internal arc ``2*i`` from
    ``tails[i]`` to ``heads[i]`` with capacity ``caps[i]``; its partner
    ``2*i + 1`` runs backwards with capacity ``rev_caps[i]`` (0 for a plain
    directed arc, equal to ``caps[i]`` for an undirected edge).
    """

    def __init__(self, n, s, t, tails, heads, caps, rev_caps=None):
        n, s, t = int(n), int(s), int(t)
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        if s == t:
            raise InputError("source and sink must differ")
        if not (0 <= s < n and 0 <= t < n):
            raise InputError("terminal outside node range")
        if tails.shape != heads.shape or tails.ndim != 1:
            raise InputError("tails and heads must be equal-length vectors")
        if len(tails) and (min(tails.min(), heads.min()) < 0
                           or max(tails.max(), heads.max()) >= n):
            raise InputError("arc endpoint outside node range")
        self.n, self.s, self.t = n, s, t
        k = len(tails)
        head = np.empty(2 * k, dtype=np.int64)
        tail = np.empty(2 * k, dtype=np.int64)
        head[0::2], head[1::2] = heads, tails
        tail[0::2], tail[1::2] = tails, heads
        self.head, self.tail = head, tail
        self.arc_ids = np.argsort(tail, kind="stable")
        first = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(tail, minlength=n), out=first[1:])
        self.first = first
        self.cap = self._pack(caps, rev_caps)

    def _pack(self, caps, rev_caps):
        k = len(self.head) // 2
        caps = np.asarray(caps, dtype=np.float64)
        rev = np.zeros(k) if rev_caps is None else np.asarray(rev_caps, dtype=np.float64)
        if caps.shape != (k,) or rev.shape != (k,):
            raise InputError("one capacity per arc required")
        if (caps < 0).any() or (rev < 0).any() or not (
                np.isfinite(caps).all() and np.isfinite(rev).all()):
            raise InputError("capacities must be finite and nonnegative")
        cap = np.empty(2 * k)
        cap[0::2], cap[1::2] = caps, rev
        return cap

    @property
    def num_arcs(self) -> int:
        return len(self.head) // 2

    def with_capacities(self, caps, rev_caps=None) -> "FlowNetwork":
        """Same structure, new capacities (the structure arrays are shared)."""
        other = object.__new__(FlowNetwork)
        other.__dict__.update(self.__dict__)
        other.cap = self._pack(caps, rev_caps)
        return other


class FlowResult(NamedTuple):
    value: float
    source_side: np.ndarray
    flow: np.ndarray


def solve_cut(net: FlowNetwork) -> tuple[float, np.ndarray, np.ndarray]:
    """Run max flow; return ``(value, source-side mask, residual caps)``."""
    top = float(net.cap.max()) if len(net.cap) else 0.0
    scale = MAX_CAPACITY / top if top > MAX_CAPACITY else 1.0
    res = net.cap * scale
    eps = 64.0 * np.spacing(max(1.0, min(top * scale, MAX_CAPACITY)))
    value = _dinic(net.n, net.s, net.t, net.first, net.arc_ids, net.head,
                   net.tail, res, eps)
    mask = _residual_reach(net.n, net.s, net.first, net.arc_ids, net.head, res, eps)
    return value / scale, mask, res / scale


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum s-t flow; ``source_side`` lists the s-side of a minimum cut.

    The cut side is the set of nodes reachable from ``s`` in the residual
    network, i.e. the inclusion-minimal minimum cut.  ``flow[i]`` is the net
    flow on constructor arc ``i`` (negative when it runs backwards).
    """
    value, mask, res = solve_cut(net)
    # net flow on the pair = forward capacity - forward residual
    flow = net.cap[0::2] - res[0::2]
    return FlowResult(value, np.flatnonzero(mask), flow)
