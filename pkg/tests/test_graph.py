import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdisco.exceptions import DegenerateAgreementsError, InputError
from qdisco.graph import (Graph, OpinionData, QDiscoInstance, compute_agreements,
                          delta_min, subset_stats)

from conftest import A, B, C, complete


@st.composite
def edge_lists(draw):
    n = draw(st.integers(1, 15))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          max_size=60))
    return n, pairs


@given(edge_lists())
def test_graph_invariants(data):
    n, pairs = data
    g = Graph(n, pairs)
    distinct = {tuple(sorted(p)) for p in pairs if p[0] != p[1]}
    assert g.m == len(distinct)
    assert g.dropped_self_loops == sum(p[0] == p[1] for p in pairs)
    assert g.dropped_duplicates == len([p for p in pairs if p[0] != p[1]]) - len(distinct)
    assert g.degrees.sum() == 2 * g.m
    for v in range(n):
        nb = g.neighbors(v)
        assert list(nb) == sorted(set(nb))
        assert v not in nb
        for u in nb:
            assert v in g.neighbors(u)


def test_graph_is_immutable():
    g = complete(3)
    with pytest.raises(AttributeError):
        g.n = 4
    with pytest.raises(ValueError):
        g.degrees[0] = 7


def test_graph_rejects_bad_endpoint():
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])


def test_compute_agreements_examples():
    assert compute_agreements([[0.5, -0.5]], [1, -1])[0] == 1.0
    P = np.random.default_rng(0).normal(size=(5, 3))
    assert np.all(compute_agreements(P, np.zeros(3)) == 0)


def test_compute_agreements_dblp_style_query():
    d, area = 6, 2
    q = -np.ones(d)
    q[area] = 1.0
    row = np.ones(d)
    row[area] = 2.0
    # independent route: explicit sum over coordinates
    expected = sum(row[i] * q[i] for i in range(d))
    assert expected == -3.0
    assert compute_agreements(row[None, :], q)[0] == expected


def test_compute_agreements_dimension_mismatch():
    with pytest.raises(InputError):
        compute_agreements(np.ones((3, 2)), [1, 2, 3])


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_compute_agreements_linear(seed):
    rng = np.random.default_rng(seed)
    P = rng.normal(size=(8, 4))
    q1, q2 = rng.normal(size=4), rng.normal(size=4)
    a, b = rng.normal(size=2)
    lhs = compute_agreements(P, a * q1 + b * q2)
    rhs = a * compute_agreements(P, q1) + b * compute_agreements(P, q2)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_opinion_data_modes():
    od = OpinionData(matrix=[[1.0, 0.0], [0.0, 1.0]])
    assert list(od.agreements_for([2, 3])) == [2.0, 3.0]
    with pytest.raises(InputError):
        od.agreements_for(None)
    ad = OpinionData(agreements=[0.1, 0.2])
    assert ad.agreements_for() is ad.agreements
    with pytest.raises(InputError):
        OpinionData()
    with pytest.raises(InputError):
        OpinionData(matrix=np.ones((2, 0)))


def test_instance_records_threshold_assumption(fig1):
    assert fig1.threshold_ok
    assert not fig1.with_theta(1.0).threshold_ok
    with pytest.raises(InputError):
        QDiscoInstance(complete(3), [1.0, 2.0], 0.0)


def test_subset_stats_triangle():
    inst = QDiscoInstance(complete(3), [1, 1, 1], 0.0)
    s = subset_stats(inst, [0, 1, 2])
    assert (s.density, s.agreement, s.feasible) == (1.0, 1.0, True)


def test_subset_stats_fig1(fig1):
    s = subset_stats(fig1, [A, B, C])
    assert s.density == pytest.approx(2 / 3)
    assert s.agreement == 0.0
    assert s.feasible
    k4 = subset_stats(fig1, [0, 1, 2, 3])
    assert (k4.density, k4.agreement, k4.feasible) == (1.5, -1.0, False)


def test_subset_stats_whole_graph_and_errors(fig1):
    s = subset_stats(fig1, range(7))
    assert s.density == fig1.graph.m / 7
    with pytest.raises(InputError):
        subset_stats(fig1, [])
    with pytest.raises(InputError):
        subset_stats(fig1, [9])


def test_delta_min_examples(fig1):
    assert delta_min(fig1.c) == 0.5
    assert delta_min([0, 1]) == 1
    with pytest.raises(DegenerateAgreementsError):
        delta_min([0.3, 0.3])


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=30))
def test_delta_min_matches_pairwise_scan(vals):
    c = np.array(vals) / 4.0
    gaps = [abs(x - y) for x in c for y in c if x != y]
    if not gaps:
        with pytest.raises(DegenerateAgreementsError):
            delta_min(c)
    else:
        assert delta_min(c) == min(gaps)


def test_induced_subgraph_keeps_labels():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)], labels=["w", "x", "y", "z"])
    h, ids = g.induced_subgraph([3, 1, 2])
    assert list(ids) == [1, 2, 3]
    assert h.labels == ("x", "y", "z")
    assert h.m == 2
