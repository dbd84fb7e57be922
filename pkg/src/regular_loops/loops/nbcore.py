"""
Non-backtracking walks and loops on a Multigraph.

Directed edges are tail half-edges. A walk is a chained sequence of directed
edges; a loop is a closed walk taken up to cyclic shift (orientation is kept,
so a loop and its reversal are different loops).

Multigraph corner cases follow directly from the definitions: a self-loop
gives two oriented loops of length 1, and every unordered pair of parallel
edges gives two oriented loops of length 2.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import networkx as nx

from regular_loops.errors import Backtracking, InvalidInputError, NotChained, NotClosed
from regular_loops.graphs.multigraph import DirectedEdge, Multigraph
from regular_loops.graphs.sampler import RandomSource, as_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Walk:
    graph: Multigraph = field(repr=False, compare=False)
    edges: Tuple[DirectedEdge, ...]

    def __post_init__(self):
        if not self.edges:
            raise InvalidInputError("a walk has at least one edge")
        _check_chained(self.graph, self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return walk_vertices(self.graph, self.edges)

    def is_closed(self) -> bool:
        return self.graph.head(self.edges[-1]) == self.edges[0] // self.graph.d


@dataclass(frozen=True)
class NbLoop:
    """Cyclically non-backtracking loop in canonical (minimal rotation) form"""
    graph: Multigraph = field(repr=False, compare=False)
    edges: Tuple[DirectedEdge, ...]
    period: int
    simple: bool

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def primitive(self) -> bool:
        return self.period == len(self.edges)

    def to_list(self) -> List[int]:
        return list(self.edges)


def _check_chained(g: Multigraph, edges: Sequence[DirectedEdge]) -> None:
    for h in edges:
        if not 0 <= h < g.half_edges:
            raise InvalidInputError(f"directed edge {h} outside [0, {g.half_edges})")
    for i in range(len(edges) - 1):
        if g.head(edges[i]) != edges[i + 1] // g.d:
            raise NotChained(f"edge {edges[i]} ends at vertex {g.head(edges[i])}, "
                             f"edge {edges[i + 1]} starts at vertex {edges[i + 1] // g.d}")


def _check_closed(g: Multigraph, edges: Sequence[DirectedEdge]) -> None:
    if not edges:
        raise NotClosed("empty edge sequence")
    _check_chained(g, edges)
    if g.head(edges[-1]) != edges[0] // g.d:
        raise NotClosed(f"walk ends at vertex {g.head(edges[-1])} but starts at {edges[0] // g.d}")


def nb_successors(g: Multigraph, e: DirectedEdge) -> List[DirectedEdge]:
    """The d - 1 directed edges that may follow e, ascending"""
    arrival = g.pairing[e]
    base = (arrival // g.d) * g.d
    return [h for h in range(base, base + g.d) if h != arrival]


def walk_vertices(g: Multigraph, edges: Sequence[DirectedEdge]) -> Tuple[int, ...]:
    """Start vertex followed by the head of every edge"""
    if not edges:
        return ()
    return (edges[0] // g.d,) + tuple(g.head(h) for h in edges)


def is_cyclically_nb(g: Multigraph, edges: Sequence[DirectedEdge]) -> bool:
    _check_closed(g, edges)
    k = len(edges)
    return all(g.pairing[edges[i]] != edges[(i + 1) % k] for i in range(k))


def _minimal_rotation(edges: Sequence[int]) -> Tuple[int, ...]:
    k = len(edges)
    return min(tuple(edges[i:]) + tuple(edges[:i]) for i in range(k))


def _period(edges: Tuple[int, ...]) -> int:
    k = len(edges)
    for p in range(1, k + 1):
        if k % p == 0 and edges[p:] + edges[:p] == edges:
            return p
    return k


def canonical_loop(g: Multigraph, edges: Sequence[DirectedEdge]) -> NbLoop:
    """Rotate to the lexicographically smallest tail sequence and fill period and simplicity"""
    if not is_cyclically_nb(g, edges):
        raise Backtracking(f"loop {list(edges)} backtracks (possibly across the wrap)")
    canonical = _minimal_rotation([int(h) for h in edges])
    heads = [g.head(h) for h in canonical]
    return NbLoop(
        graph=g,
        edges=canonical,
        period=_period(canonical),
        simple=len(set(heads)) == len(heads),
    )


def reverse_loop(loop: NbLoop) -> NbLoop:
    """The same loop traversed backwards"""
    g = loop.graph
    reversed_edges = [g.pairing[h] for h in reversed(loop.edges)]
    return canonical_loop(g, reversed_edges)


def excess_from_pairs(pairs: Iterable[Tuple[int, int]], d: int) -> int:
    """
    Cycle rank E - V + C of the subgraph formed by the given undirected edges.

    Edges are half-edge pairs; parallel edges count separately, and a pair
    and its reversal are the same edge.
    """
    distinct = {(min(a, b), max(a, b)) for a, b in pairs}
    if not distinct:
        return 0
    graph = nx.MultiGraph()
    for a, b in distinct:
        graph.add_edge(a // d, b // d, key=a)
    return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)


def walk_excess(g: Multigraph, edges: Sequence[DirectedEdge]) -> int:
    """Number of independent cycles in the subgraph induced by a walk"""
    _check_chained(g, edges)
    vertices = walk_vertices(g, edges)
    if len(set(vertices)) == len(vertices):
        return 0
    return excess_from_pairs(((h, g.pairing[h]) for h in edges), g.d)


def sample_nb_walk(g: Multigraph, k: int, rng: RandomSource) -> Walk:
    """Uniform over the n*d*(d-1)^(k-1) non-backtracking walks of length k"""
    if k < 1:
        raise InvalidInputError(f"walk length must be >= 1, got {k}")
    if g.d < 2:
        raise InvalidInputError("non-backtracking walks need d >= 2")
    gen = as_generator(rng)
    edges = [int(gen.integers(g.half_edges))]
    for _ in range(k - 1):
        successors = nb_successors(g, edges[-1])
        edges.append(successors[int(gen.integers(len(successors)))])
    return Walk(graph=g, edges=tuple(edges))
