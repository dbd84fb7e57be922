"""
Half-edge representation of d-regular multigraphs.

Half-edge h sits at vertex h // d. The pairing is a fixed-point-free
involution on range(n * d); a directed edge is identified with its tail
half-edge, so the reversal of directed edge h is pairing[h].
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from regular_loops.errors import FixedPoint, IndexOutOfRange, InvalidInputError, NotInvolution, OddHalfEdges

logger = logging.getLogger(__name__)

DirectedEdge = int


@dataclass(frozen=True)
class Multigraph:
    """Immutable d-regular multigraph given by its half-edge pairing"""
    d: int
    n: int
    pairing: Tuple[int, ...]
    _heads: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        heads = tuple(partner // self.d for partner in self.pairing)
        object.__setattr__(self, "_heads", heads)

    @property
    def half_edges(self) -> int:
        return self.n * self.d

    @property
    def edge_count(self) -> int:
        return self.half_edges // 2

    def vertex_of(self, h: int) -> int:
        return vertex_of(self, h)

    def head(self, h: DirectedEdge) -> int:
        """Head vertex of directed edge h"""
        return self._heads[h]

    def reverse(self, h: DirectedEdge) -> DirectedEdge:
        return self.pairing[h]

    def edges(self):
        """Undirected edges as (h, pairing[h]) with h < pairing[h], ascending"""
        return [(h, p) for h, p in enumerate(self.pairing) if h < p]

    def to_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "n": self.n, "pairing": list(self.pairing)}

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph keyed by the smaller half-edge of every edge"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        for h, p in self.edges():
            graph.add_edge(h // self.d, p // self.d, key=h)
        return graph


def from_pairing(d: int, n: int, pairing: Sequence[int]) -> Multigraph:
    """Validate a pairing and build the Multigraph it describes"""
    if d < 1 or n < 1:
        raise InvalidInputError(f"d and n must be positive, got d={d}, n={n}")
    total = n * d
    if total % 2:
        raise OddHalfEdges(f"n*d = {total} is odd; half-edges cannot be perfectly matched")
    values = tuple(int(p) for p in pairing)
    if len(values) != total:
        raise InvalidInputError(f"pairing has length {len(values)}, expected n*d = {total}")
    for h, p in enumerate(values):
        if not 0 <= p < total:
            raise IndexOutOfRange(f"pairing[{h}] = {p} outside [0, {total})")
        if p == h:
            raise FixedPoint(f"pairing[{h}] = {h}: a half-edge cannot pair with itself")
    for h, p in enumerate(values):
        if values[p] != h:
            raise NotInvolution(f"pairing[pairing[{h}]] = {values[p]} != {h}")
    return Multigraph(d=d, n=n, pairing=values)


def vertex_of(g: Multigraph, h: int) -> int:
    if not 0 <= h < g.half_edges:
        raise IndexOutOfRange(f"half-edge {h} outside [0, {g.half_edges})")
    return h // g.d


def structure_flags(g: Multigraph) -> Tuple[bool, bool]:
    """(has_self_loop, has_multi_edge)"""
    has_self_loop = False
    seen = set()
    has_multi_edge = False
    for h, p in g.edges():
        u, v = h // g.d, p // g.d
        if u == v:
            has_self_loop = True
        key = (min(u, v), max(u, v))
        if key in seen:
            has_multi_edge = True
        seen.add(key)
    return has_self_loop, has_multi_edge


def is_simple(g: Multigraph) -> bool:
    return structure_flags(g) == (False, False)


def adjacency_matrix(g: Multigraph) -> np.ndarray:
    """Symmetric integer adjacency matrix; a self-loop adds 2 to its diagonal entry"""
    matrix = np.zeros((g.n, g.n), dtype=np.int64)
    for h, p in g.edges():
        u, v = h // g.d, p // g.d
        matrix[u, v] += 1
        matrix[v, u] += 1
    return matrix


def save_graph(g: Multigraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(g.to_dict()) + "\n", encoding="utf-8")
    logger.debug(f"Wrote graph d={g.d} n={g.n} to {path}")
    return path


def load_graph(path: Union[str, Path]) -> Multigraph:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}") from e
    missing = {"d", "n", "pairing"} - set(payload)
    if missing:
        raise InvalidInputError(f"{path} is missing keys: {', '.join(sorted(missing))}")
    for key in ("d", "n"):
        if not isinstance(payload[key], int):
            raise InvalidInputError(f"{path}: '{key}' must be an integer")
    if any(not isinstance(p, int) for p in payload["pairing"]):
        raise InvalidInputError(f"{path}: pairing entries must be integers")
    return from_pairing(payload["d"], payload["n"], payload["pairing"])
