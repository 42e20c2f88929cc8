"""Hamiltonian completion by multi-start local search over spanning trees."""

from .bottleneck import BottleneckResult, InfeasibleError, WeightedGraph, solve_bottleneck
from .generators import GenSpec, benchmark_suite
from .graph import Graph, GraphError, UnionFind, build_graph, components, is_connected
from .instance import Instance, InstanceFormatError, parse_instance, read_instance, write_instance
from .oracle import exact_hcn, exact_ppn, is_hamiltonian
from .search import (
    DisconnectedGraphError,
    HcpSolution,
    SolverParams,
    check_completion,
    estimate_hcn,
    min_path_partition,
    solve_disconnected,
)
from .tour import ExternalTourProvider, InternalTourProvider, Tour
from .treepath import PathPartition, SpanningTree, ppn_of_tree, tree_min_path_partition

__version__ = "0.1.0"

__all__ = [
    "BottleneckResult",
    "DisconnectedGraphError",
    "ExternalTourProvider",
    "GenSpec",
    "Graph",
    "GraphError",
    "HcpSolution",
    "InfeasibleError",
    "Instance",
    "InstanceFormatError",
    "InternalTourProvider",
    "PathPartition",
    "SolverParams",
    "SpanningTree",
    "Tour",
    "UnionFind",
    "WeightedGraph",
    "benchmark_suite",
    "build_graph",
    "check_completion",
    "components",
    "estimate_hcn",
    "exact_hcn",
    "exact_ppn",
    "is_connected",
    "is_hamiltonian",
    "min_path_partition",
    "parse_instance",
    "ppn_of_tree",
    "read_instance",
    "solve_bottleneck",
    "solve_disconnected",
    "tree_min_path_partition",
    "write_instance",
]
