"""Q-Peeling: greedy peeling by agreement-aware load, bisection on z2.

For a fixed ``z2 >= 0`` the load of a node in the current subset ``V'`` is
``deg_{V'}(v) + z2 * (c_v - theta)``.  One pass removes a minimum-load node
until a single node is left (ties go to the smallest id).  The largest
"minimum load" over the visited subsets, ``l(T)``, is the value of a
feasible solution of the dual of the LP relaxation and therefore bounds the
optimum from above.  The outer loop bisects on ``z2`` guided by whether the
max-load subset ``T`` meets the agreement threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numba import njit

from .exceptions import InfeasibleThresholdError, InputError
from .graph import FEAS_TOL, QDiscoInstance, Solution, delta_min, subset_stats


def node_load(deg: int, c_v: float, theta: float, z2: float) -> float:
    if z2 < 0:
        raise InputError("z2 must be nonnegative")
    return deg + z2 * (c_v - theta)


@njit(cache=True, nogil=True)
def _heap_less(k1, v1, k2, v2):
    return k1 < k2 or (k1 == k2 and v1 < v2)


@njit(cache=True, nogil=True)
def _peel_kernel(indptr, indices, deg0, c, theta, z2):
    n = len(deg0)
    deg = deg0.copy()
    alive = np.ones(n, dtype=np.bool_)
    cap = n + len(indices) // 2 + 1
    hkey = np.empty(cap)
    hnode = np.empty(cap, dtype=np.int64)
    hdeg = np.empty(cap, dtype=np.int64)
    size = 0
    order = np.empty(n, dtype=np.int64)
    rload = np.empty(n)
    rdeg = np.empty(n, dtype=np.int64)

    for v in range(n):
        # push (sift up)
        i = size
        size += 1
        key = deg[v] + z2 * (c[v] - theta)
        while i > 0:
            p = (i - 1) >> 1
            if _heap_less(key, v, hkey[p], hnode[p]):
                hkey[i], hnode[i], hdeg[i] = hkey[p], hnode[p], hdeg[p]
                i = p
            else:
                break
        hkey[i], hnode[i], hdeg[i] = key, v, deg[v]

    for k in range(n):
        while True:
            key, v, d = hkey[0], hnode[0], hdeg[0]
            # pop (sift down the last entry)
            size -= 1
            lk, lv, ld = hkey[size], hnode[size], hdeg[size]
            i = 0
            while True:
                ch = 2 * i + 1
                if ch >= size:
                    break
                if ch + 1 < size and _heap_less(hkey[ch + 1], hnode[ch + 1], hkey[ch], hnode[ch]):
                    ch += 1
                if _heap_less(hkey[ch], hnode[ch], lk, lv):
                    hkey[i], hnode[i], hdeg[i] = hkey[ch], hnode[ch], hdeg[ch]
                    i = ch
                else:
                    break
            if size > 0:
                hkey[i], hnode[i], hdeg[i] = lk, lv, ld
            if alive[v] and d == deg[v]:
                break
        order[k] = v
        rload[k] = key
        rdeg[k] = deg[v]
        alive[v] = False
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if alive[u]:
                deg[u] -= 1
                i = size
                size += 1
                ukey = deg[u] + z2 * (c[u] - theta)
                while i > 0:
                    p = (i - 1) >> 1
                    if _heap_less(ukey, u, hkey[p], hnode[p]):
                        hkey[i], hnode[i], hdeg[i] = hkey[p], hnode[p], hdeg[p]
                        i = p
                    else:
                        break
                hkey[i], hnode[i], hdeg[i] = ukey, u, deg[u]
    return order, rload, rdeg


@dataclass
class PeelTrace:
    """One peeling pass at a fixed ``z2``.

    Step ``k`` removes ``removal_order[k]`` from ``V_{n-k}``, the subset made
    of ``removal_order[k:]``.  ``sizes``, ``edges``, ``densities``,
    ``agreements`` and ``loads`` describe that subset; ``loads[k]`` is its
    minimum load, i.e. the load of the removed node.
    """

    inst: QDiscoInstance = field(repr=False)
    z2: float
    removal_order: np.ndarray
    removed_degree: np.ndarray
    sizes: np.ndarray
    edges: np.ndarray
    densities: np.ndarray
    agreements: np.ndarray
    loads: np.ndarray
    T_index: int
    T_feasible: bool
    best_index: int | None

    @property
    def dual_bound(self) -> float:
        return float(self.loads[self.T_index])

    def subset(self, k: int) -> np.ndarray:
        return np.sort(self.removal_order[k:])

    def subset_solution(self, k: int) -> Solution:
        return Solution(
            nodes=tuple(int(v) for v in self.subset(k)),
            size=int(self.sizes[k]),
            internal_edges=int(self.edges[k]),
            density=float(self.densities[k]),
            agreement=float(self.agreements[k]),
            feasible=bool(self.agreements[k] >= self.inst.theta - FEAS_TOL),
        )

    @property
    def T(self) -> Solution:
        return self.subset_solution(self.T_index)

    @property
    def best_feasible(self) -> Solution | None:
        if self.best_index is None:
            return None
        return self.subset_solution(self.best_index)


def peel_once(inst: QDiscoInstance, z2: float) -> PeelTrace:
    """Peel the whole graph by minimum load at multiplier ``z2``."""
    if z2 < 0:
        raise InputError("z2 must be nonnegative")
    g = inst.graph
    n = g.n
    if n == 0:
        raise InputError("graph has no nodes")
    order, rload, rdeg = _peel_kernel(g.indptr, g.indices, g.degrees, inst.c,
                                      inst.theta, float(z2))
    sizes = np.arange(n, 0, -1, dtype=np.int64)
    edges = np.empty(n, dtype=np.int64)
    edges[0] = g.m
    np.subtract(g.m, np.cumsum(rdeg[:-1]), out=edges[1:])
    sums = np.cumsum(inst.c[order][::-1])[::-1]
    agreements = sums / sizes
    densities = edges / sizes

    t_idx = int(np.argmax(rload))
    feasible = agreements >= inst.theta - FEAS_TOL
    best = None
    if feasible.any():
        best = int(np.argmax(np.where(feasible, densities, -np.inf)))
    return PeelTrace(inst, float(z2), order, rdeg, sizes, edges, densities,
                     agreements, rload, t_idx, bool(feasible[t_idx]), best)


def dual_upper_bound(trace: PeelTrace) -> float:
    """``l(T)``: an upper bound on the Q-DISCO optimum for any ``z2 >= 0``."""
    return trace.dual_bound


def prop5_bound(sol: Solution, T_stats: Solution, z2_R: float, theta: float) -> float:
    """Certified upper bound ``2 d(S_out) + z2_R (c(T) - theta)`` on the optimum."""
    return 2.0 * sol.density + z2_R * (T_stats.agreement - theta)


class Probe(NamedTuple):
    z2: float
    T_feasible: bool
    dual_bound: float
    candidate_density: float | None


@dataclass
class QPeelResult:
    solution: Solution
    z2_R: float
    z2_L: float
    epsilon: float
    last_feasible_T: Solution
    upper_bound_dual: float
    prop5_bound: float
    probes: list[Probe]
    history: list[float]

    @property
    def iterations(self) -> int:
        return len(self.probes)


def z2_cap(inst: QDiscoInstance) -> float:
    """Multiplier beyond which peeling removes nodes in agreement order."""
    return 2.0 * max(inst.graph.max_degree, 1) / delta_min(inst.c)


def q_peeling(inst: QDiscoInstance, epsilon: float = 1e-6) -> QPeelResult:
    """Run Q-Peeling and attach the a-posteriori bounds to the solution."""
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    if inst.n == 0:
        raise InputError("graph has no nodes")
    theta = inst.theta
    if theta > inst.c_max:
        raise InfeasibleThresholdError(
            f"infeasible-threshold: theta={theta} exceeds max agreement {inst.c_max}")

    if inst.constant_agreements:
        tr = peel_once(inst, 0.0)
        sol = tr.best_feasible
        bound5 = prop5_bound(sol, tr.T, 0.0, theta)
        ub = min(tr.dual_bound, bound5)
        sol = sol.with_bound(ub, solver="peel", z2_R=0.0, epsilon=epsilon,
                             theta=theta, dual_bound=tr.dual_bound, prop5_bound=bound5)
        probe = Probe(0.0, tr.T_feasible, tr.dual_bound, sol.density)
        return QPeelResult(sol, 0.0, 0.0, epsilon, tr.T, tr.dual_bound, bound5,
                           [probe], [sol.density])

    z2_L, z2_R = 0.0, z2_cap(inst)
    s_out = subset_stats(inst, [int(np.argmax(inst.c))])
    T_last = s_out
    # At the cap the order is by agreement, so T is the top-agreement node
    # (or a group of tied top nodes): realize it by an actual pass.
    top = peel_once(inst, z2_R)
    dual_min = top.dual_bound
    if top.T_feasible:
        T_last = top.T
        if top.best_feasible.density > s_out.density:
            s_out = top.best_feasible
    probes = [Probe(z2_R, top.T_feasible, top.dual_bound,
                    top.best_feasible.density if top.T_feasible else None)]
    history = [s_out.density]

    while z2_R - z2_L > epsilon:
        z2 = 0.5 * (z2_L + z2_R)
        tr = peel_once(inst, z2)
        dual_min = min(dual_min, tr.dual_bound)
        if tr.T_feasible:
            z2_R = z2
            T_last = tr.T
            cand = tr.best_feasible
            if cand.density > s_out.density:
                s_out = cand
                history.append(s_out.density)
            probes.append(Probe(z2, True, tr.dual_bound, cand.density))
        else:
            z2_L = z2
            probes.append(Probe(z2, False, tr.dual_bound, None))

    bound5 = prop5_bound(s_out, T_last, z2_R, theta)
    ub = min(dual_min, bound5)
    sol = subset_stats(inst, s_out.nodes).with_bound(
        ub, solver="peel", z2_R=z2_R, z2_L=z2_L, epsilon=epsilon, theta=theta,
        dual_bound=dual_min, prop5_bound=bound5)
    return QPeelResult(sol, z2_R, z2_L, epsilon, T_last, dual_min, bound5,
                       probes, history)
