"""Text file formats: edge lists, opinions / agreements, result records.

Edge list
    One ``u v`` pair per line, whitespace separated.  A line with a single
    token declares an isolated node.  Lines starting with ``#`` or ``%`` are
    comments.  Node ids are arbitrary strings, mapped to ``0..n-1`` in order
    of first appearance; the original ids are kept as ``Graph.labels``.

Opinions
    One row per node: the node id followed by ``d`` reals (matrix mode) or
    by a single agreement value (agreement mode).  Every graph node must
    appear exactly once.

Result record
    A JSON object; see :func:`make_record` for the fields.

Floats are written with ``repr``, the shortest text that parses back to
the identical double.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .exceptions import InputError
from .graph import Graph, OpinionData, Solution

log = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith(COMMENT_PREFIXES):
                continue
            yield lineno, s.split()


def load_edge_list(path) -> Graph:
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []

    def node(tok):
        i = index.get(tok)
        if i is None:
            i = index[tok] = len(labels)
            labels.append(tok)
        return i

    for lineno, toks in _data_lines(path):
        if len(toks) == 1:
            node(toks[0])
        elif len(toks) == 2:
            edges.append((node(toks[0]), node(toks[1])))
        else:
            raise InputError(f"{path}:{lineno}: expected 'u v', got {len(toks)} fields")
    g = Graph(len(labels), edges, labels=labels)
    if g.dropped_self_loops or g.dropped_duplicates:
        log.warning("%s: dropped %d self-loops and %d duplicate edges", path,
                    g.dropped_self_loops, g.dropped_duplicates)
    return g


def write_edge_list(path, graph: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# n={graph.n} m={graph.m}\n")
        for v in np.flatnonzero(graph.degrees == 0):
            fh.write(f"{graph.label_of(int(v))}\n")
        for u, v in graph.edges:
            fh.write(f"{graph.label_of(int(u))} {graph.label_of(int(v))}\n")


def load_opinions(path, graph: Graph, mode: str = "matrix") -> OpinionData:
    if mode not in ("matrix", "agreement"):
        raise InputError(f"unknown opinion mode {mode!r}")
    rows: dict[int, list[float]] = {}
    width = None
    for lineno, toks in _data_lines(path):
        v = graph.index_of(toks[0])
        if v in rows:
            raise InputError(f"{path}:{lineno}: node {toks[0]!r} listed twice")
        try:
            vals = [float(x) for x in toks[1:]]
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
        if width is None:
            width = len(vals)
        if len(vals) != width or not vals:
            raise InputError(f"{path}:{lineno}: expected {width or 'some'} values")
        rows[v] = vals
    missing = graph.n - len(rows)
    if missing:
        first = next(graph.label_of(v) for v in range(graph.n) if v not in rows)
        raise InputError(f"{path}: {missing} graph nodes have no row (e.g. {first!r})")
    if graph.n == 0:
        raise InputError(f"{path}: empty graph")
    mat = np.array([rows[v] for v in range(graph.n)], dtype=np.float64)
    if mode == "agreement":
        if width != 1:
            raise InputError(f"{path}: agreement mode takes one value per node")
        return OpinionData(agreements=mat[:, 0])
    return OpinionData(matrix=mat)


def write_opinions(path, graph: Graph, data: OpinionData) -> None:
    vals = data.matrix if data.matrix is not None else data.agreements[:, None]
    with open(path, "w", encoding="utf-8") as fh:
        for v in range(graph.n):
            fh.write(graph.label_of(v) + "\t" + "\t".join(repr(float(x)) for x in vals[v]) + "\n")


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def make_record(sol: Solution, graph: Graph, *, solver: str, theta: float,
                epsilon: float | None = None, query: Sequence[float] | None = None,
                seconds: float | None = None) -> dict[str, Any]:
    meta = sol.meta
    bounds = {
        "prop4": sol.upper_bound if solver == "lagrange" else None,
        "dual": meta.get("dual_bound"),
        "prop5": meta.get("prop5_bound"),
    }
    return {
        "solver": solver,
        "params": {
            "theta": _num(theta),
            "epsilon": _num(epsilon),
            "query": None if query is None else [float(x) for x in query],
        },
        "lambda_R": _num(meta.get("lambda_R")),
        "z2_R": _num(meta.get("z2_R")),
        "nodes": [graph.label_of(v) for v in sol.nodes],
        "size": sol.size,
        "internal_edges": sol.internal_edges,
        "density": sol.density,
        "agreement": sol.agreement,
        "feasible": sol.feasible,
        "upper_bound": _num(sol.upper_bound),
        "bounds": {k: _num(v) for k, v in bounds.items()},
        "seconds": _num(seconds),
    }


def write_result(path, record: dict[str, Any]) -> None:
    Path(path).write_text(json.dumps(record, indent=1, allow_nan=False) + "\n",
                          encoding="utf-8")


def load_result(path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
