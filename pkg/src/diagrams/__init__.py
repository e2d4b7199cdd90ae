"""Recursion graphs: enumeration, text form and weights"""

from .graphs import (
    RULE_SETS,
    Bond,
    Child,
    Leaf,
    RecursionGraph,
    enumerate_graphs,
    mirror_classes,
    pants_count,
    skeleton_shapes,
    to_text,
)
from .weights import GraphEvaluator, graph_weight, graphs_weight_sum

__all__ = [
    "Bond",
    "Child",
    "GraphEvaluator",
    "Leaf",
    "RULE_SETS",
    "RecursionGraph",
    "enumerate_graphs",
    "graph_weight",
    "graphs_weight_sum",
    "mirror_classes",
    "pants_count",
    "skeleton_shapes",
    "to_text",
]
