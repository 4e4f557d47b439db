import itertools

import numpy as np
import pytest

from qdisco.graph import Graph, QDiscoInstance
from qdisco.synth import gen_bimodal_agreements, gen_gnm

# Fig. 1(b): K4 on 0..3 with c = -1, path a(4) - b(5) - c(6)
FIG1_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6)]
FIG1_C = [-1.0, -1.0, -1.0, -1.0, 1.0, -0.5, -0.5]
A, B, C = 4, 5, 6


@pytest.fixture
def fig1():
    return QDiscoInstance(Graph(7, FIG1_EDGES), FIG1_C, 0.0)


def complete(k):
    return Graph(k, list(itertools.combinations(range(k), 2)))


def random_graph(rng, n_lo=1, n_hi=10):
    n = int(rng.integers(n_lo, n_hi + 1))
    m = int(rng.integers(0, n * (n - 1) // 2 + 1))
    return gen_gnm(n, m, int(rng.integers(2**31)))


def random_qdisco(seed, n_lo=2, n_hi=12, thetas=(-0.5, 0.0, 0.2)):
    """Small instance from the bimodal family; theta picked from ``thetas``."""
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n_lo, n_hi)
    c = gen_bimodal_agreements(g.n, seed)
    theta = thetas[seed % len(thetas)]
    return QDiscoInstance(g, c, theta)


def usable_instances(count, start=0, **kw):
    """``count`` random instances satisfying theta < max c."""
    out, seed = [], start
    while len(out) < count:
        inst = random_qdisco(seed, **kw)
        if inst.threshold_ok:
            out.append(inst)
        seed += 1
    return out
