"""Exact verification toolkit for the bunkbed inequality on complete graphs."""

from .graph import (
    BunkbedGraph,
    CapacityError,
    Configuration,
    EdgeProbabilityVector,
    OriginalGraph,
    build_bunkbed,
    complete_graph,
    path_graph,
)
from .exact import main_component_distribution, prob_connected_dp, prob_connected_enum
from .counting import Triplet

__all__ = [
    "BunkbedGraph",
    "CapacityError",
    "Configuration",
    "EdgeProbabilityVector",
    "OriginalGraph",
    "Triplet",
    "build_bunkbed",
    "complete_graph",
    "main_component_distribution",
    "path_graph",
    "prob_connected_dp",
    "prob_connected_enum",
]
