"""Graph storage, agreement arithmetic and subset statistics.

Every solver in the package works on the same immutable :class:`Graph`
(CSR adjacency over dense integer ids) and reports its answer as a
:class:`Solution`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .exceptions import DegenerateAgreementsError, InputError

FEAS_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Graph:
    """Undirected simple graph on nodes ``0..n-1``.

    Self-loops and repeated edges in the input are dropped and counted in
    ``dropped_self_loops`` / ``dropped_duplicates``.  ``labels`` optionally
    keeps the external id of every node.
    """

    __slots__ = (
        "n",
        "edges",
        "indptr",
        "indices",
        "degrees",
        "labels",
        "dropped_self_loops",
        "dropped_duplicates",
        "_label_index",
    )

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = (),
                 labels: Sequence[str] | None = None):
        n = int(n)
        if n < 0:
            raise InputError("node count must be nonnegative")
        e = np.asarray(edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise InputError("edges must be pairs of node ids")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InputError(f"edge endpoint outside [0, {n})")

        loops = e[:, 0] == e[:, 1]
        e = e[~loops]
        e = np.sort(e, axis=1)
        before = len(e)
        e = np.unique(e, axis=0) if len(e) else e
        self.dropped_self_loops = int(loops.sum())
        self.dropped_duplicates = before - len(e)

        self.n = n
        self.edges = _frozen(np.ascontiguousarray(e))
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        self.indices = _frozen(dst[order])
        deg = np.bincount(src, minlength=n).astype(np.int64)
        self.degrees = _frozen(deg)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        self.indptr = _frozen(indptr)

        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError("one label per node required")
        self.labels = labels
        self._label_index = None

    def __setattr__(self, name, value):
        if name != "_label_index" and hasattr(self, name):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index_of(self, label: str) -> int:
        if self.labels is None:
            v = int(label)
            if not 0 <= v < self.n:
                raise InputError(f"unknown node {label!r}")
            return v
        if self._label_index is None:
            self._label_index = {s: i for i, s in enumerate(self.labels)}
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise InputError(f"unknown node {label!r}") from None

    def mask(self, nodes: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes,
                        dtype=np.int64)] = True
        return mask

    def induced_edge_count(self, mask: np.ndarray) -> int:
        if not self.m:
            return 0
        return int(np.count_nonzero(mask[self.edges[:, 0]] & mask[self.edges[:, 1]]))

    def induced_subgraph(self, nodes: Iterable[int]) -> tuple["Graph", np.ndarray]:
        """Return ``(H, ids)`` where node ``i`` of ``H`` is node ``ids[i]`` here."""
        ids = np.unique(np.asarray(list(nodes), dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[ids] = np.arange(len(ids))
        keep = (local[self.edges[:, 0]] >= 0) & (local[self.edges[:, 1]] >= 0)
        sub = local[self.edges[keep]]
        labels = None if self.labels is None else [self.labels[i] for i in ids]
        return Graph(len(ids), sub, labels=labels), ids


@dataclass(frozen=True)
class OpinionData:
    """Either an ``n x d`` opinion matrix or a precomputed agreement vector."""

    matrix: np.ndarray | None = None
    agreements: np.ndarray | None = None

    def __post_init__(self):
        if (self.matrix is None) == (self.agreements is None):
            raise InputError("give exactly one of matrix or agreements")
        if self.matrix is not None:
            P = np.asarray(self.matrix, dtype=np.float64)
            if P.ndim != 2 or P.shape[1] < 1:
                raise InputError("opinion matrix must be n x d with d >= 1")
            object.__setattr__(self, "matrix", _frozen(P))
        else:
            c = np.asarray(self.agreements, dtype=np.float64)
            if c.ndim != 1:
                raise InputError("agreements must be a vector")
            object.__setattr__(self, "agreements", _frozen(c))

    @property
    def n(self) -> int:
        return len(self.matrix if self.matrix is not None else self.agreements)

    @property
    def dim(self) -> int | None:
        return None if self.matrix is None else self.matrix.shape[1]

    def agreements_for(self, q: Sequence[float] | None = None) -> np.ndarray:
        if self.matrix is None:
            if q is not None:
                raise InputError("agreement-mode data takes no query vector")
            return self.agreements
        if q is None:
            raise InputError("a query vector is required for opinion matrices")
        return compute_agreements(self.matrix, q)


def compute_agreements(P: np.ndarray, q: Sequence[float]) -> np.ndarray:
    """Agreement ``c_v = p_v . q`` of every row of ``P`` with the query."""
    P = np.asarray(P, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if P.ndim != 2 or q.ndim != 1 or P.shape[1] != q.shape[0]:
        raise InputError(
            f"query of dimension {q.shape} does not match opinions {P.shape}")
    return P @ q


@dataclass(frozen=True)
class QDiscoInstance:
    """A graph, its node agreements and the threshold."""

    graph: Graph
    c: np.ndarray
    theta: float

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64).copy()
        if c.shape != (self.graph.n,):
            raise InputError(f"need {self.graph.n} agreements, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InputError("agreements must be finite")
        object.__setattr__(self, "c", _frozen(c))
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def c_max(self) -> float:
        return float(self.c.max())

    @property
    def threshold_ok(self) -> bool:
        """Whether theta < max c_v, the standing assumption of both heuristics."""
        return self.graph.n > 0 and self.theta < self.c_max

    @property
    def constant_agreements(self) -> bool:
        return bool(self.c.min() == self.c.max())

    def with_theta(self, theta: float) -> "QDiscoInstance":
        return QDiscoInstance(self.graph, self.c, theta)


@dataclass(frozen=True)
class Solution:
    nodes: tuple[int, ...]
    size: int
    internal_edges: int
    density: float
    agreement: float
    feasible: bool
    upper_bound: float | None = None
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def with_bound(self, upper_bound: float | None, **meta) -> "Solution":
        merged = {**self.meta, **meta}
        return Solution(self.nodes, self.size, self.internal_edges, self.density,
                        self.agreement, self.feasible, upper_bound, merged)


def subset_stats(inst: QDiscoInstance, S: Iterable[int], **meta) -> Solution:
    """Exact statistics of the induced subgraph ``G[S]``."""
    nodes = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S,
                                 dtype=np.int64))
    if len(nodes) == 0:
        raise InputError("subset must be nonempty")
    if nodes[0] < 0 or nodes[-1] >= inst.n:
        raise InputError("subset contains unknown node ids")
    mask = np.zeros(inst.n, dtype=bool)
    mask[nodes] = True
    edges = inst.graph.induced_edge_count(mask)
    size = len(nodes)
    agreement = float(inst.c[nodes].sum()) / size
    return Solution(
        nodes=tuple(int(v) for v in nodes),
        size=size,
        internal_edges=edges,
        density=edges / size,
        agreement=agreement,
        feasible=agreement >= inst.theta - FEAS_TOL,
        meta=dict(meta),
    )


def delta_min(c: Sequence[float]) -> float:
    """Smallest positive gap between two agreement values."""
    vals = np.unique(np.asarray(c, dtype=np.float64))
    if len(vals) < 2:
        raise DegenerateAgreementsError("degenerate-constant-agreements")
    return float(np.diff(vals).min())
