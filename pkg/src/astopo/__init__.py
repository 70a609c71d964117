"""AS-level topology metrics and dK-random null models."""
from .graph import (
    GraphError,
    TopologyGraph,
    bfs_distances,
    build_graph,
    connected_components,
    degree_sequence,
    induced_subgraph,
    largest_component,
    read_graph,
    write_graph,
)

__version__ = "0.1.0"

__all__ = [
    "GraphError", "TopologyGraph", "bfs_distances", "build_graph", "connected_components",
    "degree_sequence", "induced_subgraph", "largest_component", "read_graph", "write_graph",
]
