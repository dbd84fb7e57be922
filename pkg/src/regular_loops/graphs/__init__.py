"""
Regular multigraphs: half-edge representation, random streams and samplers.
"""

from regular_loops.graphs.multigraph import (
    DirectedEdge,
    Multigraph,
    adjacency_matrix,
    from_pairing,
    is_simple,
    load_graph,
    save_graph,
    structure_flags,
    vertex_of,
)
from regular_loops.graphs.rng import RngStream, cell_stream_index, mix64
from regular_loops.graphs.sampler import (
    LazyConfiguration,
    LazyWalk,
    count_pairings,
    enumerate_all_pairings,
    sample_configuration,
    sample_lazy_nb_walk,
    sample_uniform_simple,
)
from regular_loops.graphs.factory import GraphModel, GraphModelFactory

__all__ = [
    "DirectedEdge",
    "Multigraph",
    "adjacency_matrix",
    "from_pairing",
    "is_simple",
    "load_graph",
    "save_graph",
    "structure_flags",
    "vertex_of",
    "RngStream",
    "cell_stream_index",
    "mix64",
    "LazyConfiguration",
    "LazyWalk",
    "count_pairings",
    "enumerate_all_pairings",
    "sample_configuration",
    "sample_lazy_nb_walk",
    "sample_uniform_simple",
    "GraphModel",
    "GraphModelFactory",
]
