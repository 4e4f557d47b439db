"""Query-centric densest subgraphs under an average-agreement constraint."""

from .baselines import agreement_filter
from .exceptions import (DegenerateAgreementsError, InfeasibleThresholdError,
                         InputError, InstanceTooLargeError, QDiscoError)
from .graph import (Graph, OpinionData, QDiscoInstance, Solution,
                    compute_agreements, delta_min, subset_stats)
from .hdsp import densest_subgraph, hdsp_decision, hdsp_solve
from .lagrange import QLagrangeResult, lagrange_upper_bound, q_lagrange
from .maxflow import FlowNetwork, max_flow
from .peeling import (PeelTrace, QPeelResult, dual_upper_bound, node_load,
                      peel_once, prop5_bound, q_peeling)

__all__ = [
    "DegenerateAgreementsError", "FlowNetwork", "Graph", "InfeasibleThresholdError",
    "InputError", "InstanceTooLargeError", "OpinionData", "PeelTrace", "QDiscoError",
    "QDiscoInstance", "QLagrangeResult", "QPeelResult", "Solution", "agreement_filter",
    "compute_agreements", "delta_min", "densest_subgraph", "dual_upper_bound",
    "hdsp_decision", "hdsp_solve", "lagrange_upper_bound", "max_flow", "node_load",
    "peel_once", "prop5_bound", "q_lagrange", "q_peeling", "subset_stats",
]
