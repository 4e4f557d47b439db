"""Agreement Filtering (AF) baseline."""

from __future__ import annotations

import numpy as np

from .graph import QDiscoInstance, Solution, subset_stats
from .hdsp import densest_subgraph


def agreement_filter(inst: QDiscoInstance) -> Solution | None:
    """Densest subgraph among nodes with ``c_v >= theta``.

    Returns ``None`` when no node clears the threshold (empty-after-filter).
    """
    keep = np.flatnonzero(inst.c >= inst.theta)
    if len(keep) == 0:
        return None
    sub, ids = inst.graph.induced_subgraph(keep)
    nodes, _ = densest_subgraph(sub)
    return subset_stats(inst, ids[nodes], solver="af", theta=inst.theta)
