"""Hierarchically modular simple graphs with a prescribed node degree list.

Graphs are built from a degree list, randomized by edge switching and then
modularized by switching edges toward node pairs that a recursive-halving
topology marks as related.
"""

__version__ = "0.1.0"

from .construction import ConstraintSet, build_g0, default_attempts, randomize
from .degrees import DegreeDistributionSpec, Normal, PowerLaw, ndl_stats, sample_ndl, validate_ndl
from .graph import Graph, degree_list, is_connected, new_graph, read_edge_list, write_edge_list
from .metrics import MetricsReport, compute_report
from .modularize import ModularizationConfig, evaluate_switch, modularize, q2
from .pipeline import PipelineResult, run_conditioned_pipeline, run_pipeline
from .richclub import RichClubSpec, build_constraints, select_rich_club
from .topology import DecompositionTopology, average_edge_distance, build_topology

__all__ = [
    "ConstraintSet", "DecompositionTopology", "DegreeDistributionSpec", "Graph", "MetricsReport",
    "ModularizationConfig", "Normal", "PipelineResult", "PowerLaw", "RichClubSpec",
    "average_edge_distance", "build_constraints", "build_g0", "build_topology", "compute_report",
    "default_attempts", "degree_list", "evaluate_switch", "is_connected", "modularize",
    "ndl_stats", "new_graph", "q2", "randomize", "read_edge_list", "run_conditioned_pipeline",
    "run_pipeline", "sample_ndl", "select_rich_club", "validate_ndl", "write_edge_list",
]
