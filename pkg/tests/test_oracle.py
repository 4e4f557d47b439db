import itertools
from fractions import Fraction

import numpy as np
import pytest

from qdisco.exceptions import InstanceTooLargeError
from qdisco.graph import Graph, QDiscoInstance
from qdisco.oracle import (brute_damks, brute_densest, brute_hdsp, brute_qdisco,
                           damks_gadget)

from conftest import A, B, C, complete, random_graph


def naive_hdsp(graph, w):
    """Second, loop-based oracle used to check the vectorized sweep."""
    best = -np.inf
    E = {tuple(e) for e in graph.edges.tolist()}
    for r in range(1, graph.n + 1):
        for S in itertools.combinations(range(graph.n), r):
            e = sum((u, v) in E for u, v in itertools.combinations(S, 2))
            best = max(best, (e + sum(w[v] for v in S)) / r)
    return best


def test_fig1_optimum(fig1):
    sol = brute_qdisco(fig1)
    assert sol.nodes == (A, B, C)
    assert sol.density == pytest.approx(2 / 3)


def test_no_feasible_set(fig1):
    assert brute_qdisco(fig1.with_theta(1.5)) is None


def test_vacuous_constraint_gives_densest(fig1):
    sol = brute_qdisco(fig1.with_theta(-1e9))
    assert sol.density == 1.5


def test_size_guard():
    with pytest.raises(InstanceTooLargeError):
        brute_qdisco(QDiscoInstance(Graph(21), np.zeros(21), -1.0))
    with pytest.raises(InstanceTooLargeError):
        brute_damks(Graph(17), 3)


@pytest.mark.parametrize("seed", range(40))
def test_brute_hdsp_matches_naive(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 1, 6)
    w = rng.uniform(-1, 1, g.n)
    assert brute_hdsp(g, w)[0] == pytest.approx(naive_hdsp(g, w), abs=1e-12)


def test_brute_hdsp_examples():
    assert brute_hdsp(complete(4), np.zeros(4))[0] == 1.5
    w = np.zeros(5)
    w[4] = 10
    g = Graph(5, list(itertools.combinations(range(4), 2)))
    val, S = brute_hdsp(g, w)
    assert val == 10 and list(S) == [4]


@pytest.mark.parametrize("seed", range(20))
def test_brute_hdsp_unweighted_is_densest(seed):
    g = random_graph(np.random.default_rng(seed), 1, 10)
    assert brute_hdsp(g, np.zeros(g.n))[0] == pytest.approx(float(brute_densest(g)[0]))


def test_damks_examples():
    assert brute_damks(complete(4), 3)[0] == 1
    assert brute_damks(complete(4), 4)[0] == Fraction(3, 2)
    assert brute_damks(Graph(4, [(0, 1), (1, 2), (2, 3)]), 2)[0] == Fraction(1, 2)


def test_gadget_structure():
    inst = damks_gadget(complete(3), 3)
    assert inst.n == 6 and inst.graph.m == 3 and inst.theta == 0.5
    assert list(inst.c) == [0, 0, 0, 1, 1, 1]


def test_gadget_k3_triangle():
    sol = brute_qdisco(damks_gadget(complete(3), 3))
    assert Fraction(sol.internal_edges, sol.size) == Fraction(1, 2)
    assert sol.agreement == 0.5


def test_gadget_edgeless():
    for k in (1, 2, 4):
        assert brute_qdisco(damks_gadget(Graph(5), k)).density == 0


def test_gadget_labels_stay_unique():
    g = Graph(2, [(0, 1)], labels=["pad0", "x"])
    inst = damks_gadget(g, 2)
    assert len(set(inst.graph.labels)) == 4
