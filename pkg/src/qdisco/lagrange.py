"""Q-Lagrange: bisection on the Lagrange multiplier of the agreement constraint.

For a multiplier ``lam >= 0`` the relaxed objective is

    H_lam(S) = d(S) + lam * (c(S) - theta),

an HDSP-PN instance with node weights ``lam * c_v`` (the constant
``lam * theta`` does not move the argmax).  Bisection keeps the smallest
multiplier seen whose relaxation optimum meets the threshold; the optimum
at that multiplier is returned together with the bound
``d(S_out) + lam_R * (c(S_out) - theta) >= OPT``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InfeasibleThresholdError, InputError
from .graph import FEAS_TOL, QDiscoInstance, Solution, subset_stats
from .hdsp import HdspNetwork


class LagrangeProbe(NamedTuple):
    lam: float
    feasible: bool
    relaxed_value: float


@dataclass
class QLagrangeResult:
    solution: Solution
    lambda_R: float
    lambda_L: float
    epsilon: float
    iterations: int
    upper_bound: float
    lambda_R_initial: float
    initial_feasible: bool
    probes: list[LagrangeProbe]


def lagrange_upper_bound(sol: Solution, lambda_R: float, theta: float) -> float:
    """Bound ``d(S) + lambda_R (c(S) - theta)`` on the Q-DISCO optimum."""
    if lambda_R == 0:
        return sol.density
    return sol.density + lambda_R * (sol.agreement - theta)


def q_lagrange(inst: QDiscoInstance, epsilon: float = 1e-6) -> QLagrangeResult:
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    if inst.n == 0:
        raise InputError("graph has no nodes")
    theta, c = inst.theta, inst.c
    c_max = inst.c_max
    if theta > c_max:
        raise InfeasibleThresholdError(
            f"infeasible-threshold: theta={theta} exceeds max agreement {c_max}")

    net = HdspNetwork(inst.graph)

    def finish(sol, lam_R, lam_L, iters, lam0, init_ok, probes, ub=None):
        if ub is None:
            ub = lagrange_upper_bound(sol, lam_R, theta)
        sol = sol.with_bound(ub, solver="lagrange", lambda_R=lam_R, lambda_L=lam_L,
                             epsilon=epsilon, theta=theta)
        return QLagrangeResult(sol, lam_R, lam_L, epsilon, iters, ub, lam0,
                               init_ok, probes)

    if inst.constant_agreements:
        res = net.solve(np.zeros(inst.n))
        return finish(subset_stats(inst, res.nodes), 0.0, 0.0, 0, 0.0, True, [])

    if c_max - theta <= FEAS_TOL:
        # Only subsets of top-agreement nodes are feasible; the densest of
        # them is optimal, and no finite multiplier is needed.
        top = np.flatnonzero(c >= c_max - FEAS_TOL)
        sub, ids = inst.graph.induced_subgraph(top)
        res = HdspNetwork(sub).solve(np.zeros(sub.n))
        sol = subset_stats(inst, ids[res.nodes])
        return finish(sol, math.inf, 0.0, 0, math.inf, True, [], ub=sol.density)

    d_star = net.solve(np.zeros(inst.n)).value
    lam_L, lam_R = 0.0, d_star / (c_max - theta)
    lam0 = lam_R
    res = net.solve(lam_R * c)
    s_out = subset_stats(inst, res.nodes)
    init_ok = s_out.feasible
    if not init_ok:
        # Tie at lam_R resolved towards an infeasible optimum by rounding;
        # the best-agreement singleton is also optimal there.
        s_out = subset_stats(inst, [int(np.argmax(c))])
    prev = np.asarray(s_out.nodes)

    probes = []
    iters = 0
    while lam_R - lam_L > epsilon:
        lam = 0.5 * (lam_L + lam_R)
        res = net.solve(lam * c, init=prev)
        S = subset_stats(inst, res.nodes)
        iters += 1
        probes.append(LagrangeProbe(lam, S.feasible, res.value - lam * theta))
        if S.feasible:
            s_out, lam_R = S, lam
        else:
            lam_L = lam
        prev = res.nodes
    return finish(s_out, lam_R, lam_L, iters, lam0, init_ok, probes)
