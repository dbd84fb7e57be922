"""
Non-backtracking walks, loops and loop counts.
"""

from regular_loops.loops.arith import divisors, factorize, mobius
from regular_loops.loops.nbcore import (
    NbLoop,
    Walk,
    canonical_loop,
    excess_from_pairs,
    is_cyclically_nb,
    nb_successors,
    reverse_loop,
    sample_nb_walk,
    walk_excess,
    walk_vertices,
)
from regular_loops.loops.census import (
    CountMethod,
    LoopCensus,
    SpectralCount,
    check_census,
    closed_nb_walk_traces,
    count_all_loops,
    count_closed_nb_walks_dense,
    count_closed_nb_walks_exact,
    count_closed_nb_walks_spectral,
    count_primitive_loops,
    count_primitive_loops_spectral,
    count_simple_loops,
    enumerate_loops_oracle,
    estimate_dfs_cost,
    primitive_from_spectral_traces,
    primitive_from_traces,
    spectral_traces,
    take_census,
)

__all__ = [
    "divisors",
    "factorize",
    "mobius",
    "NbLoop",
    "Walk",
    "canonical_loop",
    "excess_from_pairs",
    "is_cyclically_nb",
    "nb_successors",
    "reverse_loop",
    "sample_nb_walk",
    "walk_excess",
    "walk_vertices",
    "CountMethod",
    "LoopCensus",
    "SpectralCount",
    "check_census",
    "closed_nb_walk_traces",
    "count_all_loops",
    "count_closed_nb_walks_dense",
    "count_closed_nb_walks_exact",
    "count_closed_nb_walks_spectral",
    "count_primitive_loops",
    "count_primitive_loops_spectral",
    "count_simple_loops",
    "enumerate_loops_oracle",
    "estimate_dfs_cost",
    "primitive_from_spectral_traces",
    "primitive_from_traces",
    "spectral_traces",
    "take_census",
]
