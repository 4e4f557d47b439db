import math

import numpy as np
import pytest

from qdisco.exceptions import InfeasibleThresholdError, InputError
from qdisco.graph import Graph, QDiscoInstance, Solution, subset_stats
from qdisco.hdsp import densest_subgraph, hdsp_solve
from qdisco.lagrange import lagrange_upper_bound, q_lagrange
from qdisco.oracle import brute_qdisco

from conftest import A, complete, usable_instances

INSTANCES = usable_instances(120)


def test_fig1_returns_isolated_high_agreement_node(fig1):
    r = q_lagrange(fig1, 1e-6)
    assert r.solution.nodes == (A,)
    assert r.solution.density == 0 and r.solution.agreement == 1
    assert r.lambda_R == pytest.approx(0.75, abs=1e-3)
    assert r.lambda_R - r.lambda_L <= 1e-6


def test_fig1_bound_covers_optimum(fig1):
    r = q_lagrange(fig1)
    opt = brute_qdisco(fig1).density
    assert opt == pytest.approx(2 / 3)
    assert r.upper_bound == pytest.approx(0 + r.lambda_R * (1 - 0))
    assert opt <= r.upper_bound <= 0.76


def test_uniformly_feasible_triangle():
    r = q_lagrange(QDiscoInstance(complete(3), [1, 1, 1], 0.5))
    assert r.solution.size == 3 and r.solution.density == 1


def test_upper_bound_formula():
    sol = Solution((0,), 1, 0, 0.0, 1.0, True)
    assert lagrange_upper_bound(sol, 0.75, 0.0) == 0.75
    sol2 = Solution((0, 1), 2, 1, 0.5, 0.3, True)
    assert lagrange_upper_bound(sol2, 0.0, 0.1) == 0.5


def test_threshold_errors(fig1):
    with pytest.raises(InfeasibleThresholdError):
        q_lagrange(fig1.with_theta(1.01))
    with pytest.raises(InputError):
        q_lagrange(fig1, epsilon=0)


def test_threshold_equal_to_max_agreement():
    # two top nodes joined by an edge, plus a denser low-agreement triangle
    g = Graph(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    inst = QDiscoInstance(g, [1, 1, 0, 0, 0], 1.0)
    r = q_lagrange(inst)
    assert set(r.solution.nodes) == {0, 1}
    assert r.solution.feasible
    assert r.upper_bound == pytest.approx(brute_qdisco(inst).density)


@pytest.mark.parametrize("inst", INSTANCES[:60])
def test_initial_relaxation_optimum_is_feasible(inst):
    _, d_star = densest_subgraph(inst.graph)
    lam = d_star / (inst.c_max - inst.theta)
    S = subset_stats(inst, hdsp_solve(inst.graph, lam * inst.c).nodes)
    if d_star > 0:
        assert S.feasible
        assert q_lagrange(inst).initial_feasible


@pytest.mark.parametrize("inst", INSTANCES)
def test_prop4_certificate(inst):
    r = q_lagrange(inst)
    opt = brute_qdisco(inst).density
    sol = r.solution
    assert sol.agreement >= inst.theta - 1e-9
    assert sol.density >= opt - r.lambda_R * (sol.agreement - inst.theta) - 1e-7
    assert r.upper_bound >= opt - 1e-7


@pytest.mark.parametrize("inst", INSTANCES[:60])
def test_bisection_invariants(inst):
    eps = 1e-6
    r = q_lagrange(inst, eps)
    feas = [p.lam for p in r.probes if p.feasible]
    infeas = [p.lam for p in r.probes if not p.feasible]
    assert r.lambda_R == (min(feas) if feas else r.lambda_R_initial)
    assert r.lambda_L == (max(infeas) if infeas else 0.0)
    if feas and infeas:
        assert max(infeas) < min(feas)
    if r.lambda_R_initial > 0:
        assert r.iterations <= math.ceil(math.log2(r.lambda_R_initial / eps)) + 1


def test_constant_agreements_bypass_to_densest():
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    r = q_lagrange(QDiscoInstance(g, [0.2] * 5, 0.0))
    assert r.solution.density == 1.0 and r.iterations == 0
    assert r.upper_bound == 1.0
