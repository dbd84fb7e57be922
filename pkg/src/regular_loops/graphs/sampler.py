"""
Samplers over d-regular multigraphs.

sample_configuration draws from the configuration model G(d, n); the uniform
simple model is reached by rejection; enumerate_all_pairings walks the whole
sample space for tiny n; LazyConfiguration reveals a configuration pairing
only where a walk needs it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple, Union

import numpy as np

from regular_loops.errors import BudgetExceeded, InvalidInputError, OddHalfEdges, RejectionBudgetExhausted
from regular_loops.graphs.multigraph import Multigraph, from_pairing, structure_flags
from regular_loops.graphs.rng import RngStream

logger = logging.getLogger(__name__)

RandomSource = Union[RngStream, np.random.Generator]

DEFAULT_ENUMERATION_BUDGET = 10_000_000


def as_generator(rng: RandomSource) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _check_sizes(d: int, n: int) -> None:
    if d < 1 or n < 1:
        raise InvalidInputError(f"d and n must be positive, got d={d}, n={n}")
    if (n * d) % 2:
        raise OddHalfEdges(f"n*d = {n * d} is odd; take n even when d is odd")


def count_pairings(d: int, n: int) -> int:
    """(n*d - 1)!!, the number of perfect matchings of n*d half-edges"""
    _check_sizes(d, n)
    total = 1
    for odd in range(n * d - 1, 0, -2):
        total *= odd
    return total


def sample_configuration(d: int, n: int, rng: RandomSource) -> Multigraph:
    """
    Uniform perfect matching of the n*d half-edges.

    The lowest unpaired half-edge is paired with a uniform choice among the
    other unpaired ones; the t-th choice is drawn from [0, n*d - 1 - 2t).
    """
    _check_sizes(d, n)
    gen = as_generator(rng)
    total = n * d
    draws = gen.integers(0, np.arange(total - 1, 0, -2))

    pool: List[int] = list(range(total))
    position: List[int] = list(range(total))
    pairing = [-1] * total

    def remove(h: int) -> None:
        i = position[h]
        last = pool.pop()
        if last != h:
            pool[i] = last
            position[last] = i

    step = 0
    for h in range(total):
        if pairing[h] >= 0:
            continue
        remove(h)
        partner = pool[int(draws[step])]
        remove(partner)
        pairing[h] = partner
        pairing[partner] = h
        step += 1
    return from_pairing(d, n, pairing)


def sample_uniform_simple(d: int, n: int, rng: RandomSource, max_attempts: int = 1000) -> Multigraph:
    """First configuration draw with neither self-loops nor multi-edges"""
    _check_sizes(d, n)
    if max_attempts < 1:
        raise InvalidInputError(f"max_attempts must be >= 1, got {max_attempts}")
    gen = as_generator(rng)
    for attempt in range(1, max_attempts + 1):
        graph = sample_configuration(d, n, gen)
        if structure_flags(graph) == (False, False):
            logger.debug(f"Accepted simple graph d={d} n={n} after {attempt} attempt(s)")
            return graph
    raise RejectionBudgetExhausted(f"no simple {d}-regular graph on {n} vertices in {max_attempts} attempts")


def enumerate_all_pairings(d: int, n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Multigraph]:
    """
    Every perfect matching exactly once.

    The lowest unpaired half-edge is matched with each larger unpaired
    candidate in increasing order, recursively.
    """
    count = count_pairings(d, n)
    if count > budget:
        raise BudgetExceeded(f"(n*d-1)!! = {count} pairings exceeds the enumeration budget {budget}")
    total = n * d
    pairing = [-1] * total

    def extend(lowest: int) -> Iterator[Multigraph]:
        while lowest < total and pairing[lowest] >= 0:
            lowest += 1
        if lowest == total:
            yield Multigraph(d=d, n=n, pairing=tuple(pairing))
            return
        for candidate in range(lowest + 1, total):
            if pairing[candidate] >= 0:
                continue
            pairing[lowest], pairing[candidate] = candidate, lowest
            yield from extend(lowest + 1)
            pairing[lowest] = pairing[candidate] = -1

    yield from extend(0)


class LazyConfiguration:
    """
    Configuration-model pairing revealed on demand.

    A half-edge followed for the first time is paired with a uniformly random
    unpaired half-edge; revealed pairs never change.
    """

    def __init__(self, d: int, n: int, rng: RandomSource):
        _check_sizes(d, n)
        if n * d < 2:
            raise InvalidInputError("need at least two half-edges")
        self.d = d
        self.n = n
        self.total = n * d
        self._gen = as_generator(rng)
        self._partner: Dict[int, int] = {}

    def partner(self, h: int) -> int:
        known = self._partner.get(h)
        if known is not None:
            return known
        if len(self._partner) >= self.total - 1:
            raise InvalidInputError("no unpaired half-edge left to reveal")
        while True:
            candidate = int(self._gen.integers(self.total))
            if candidate != h and candidate not in self._partner:
                break
        self._partner[h] = candidate
        self._partner[candidate] = h
        return candidate

    @property
    def revealed_pairs(self) -> int:
        return len(self._partner) // 2


@dataclass(frozen=True)
class LazyWalk:
    """Walk on a lazily revealed configuration graph"""
    d: int
    vertices: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.pairs)

    def self_intersects(self) -> bool:
        return len(set(self.vertices)) < len(self.vertices)


def sample_lazy_nb_walk(d: int, n: int, k: int, rng: RandomSource) -> LazyWalk:
    """
    Uniform non-backtracking walk of length k on a fresh G(d, n) sample.

    Only the pairs the walk crosses are revealed; pairs[i] is
    (tail half-edge, head half-edge) of step i.
    """
    if k < 1:
        raise InvalidInputError(f"walk length must be >= 1, got {k}")
    if d < 2:
        raise InvalidInputError("non-backtracking walks need d >= 2")
    gen = as_generator(rng)
    lazy = LazyConfiguration(d, n, gen)
    h = int(gen.integers(lazy.total))
    vertices = [h // d]
    pairs = []
    for step in range(k):
        arrival = lazy.partner(h)
        pairs.append((h, arrival))
        vertex = arrival // d
        vertices.append(vertex)
        if step == k - 1:
            break
        local = arrival % d
        choice = int(gen.integers(d - 1))
        if choice >= local:
            choice += 1
        h = vertex * d + choice
    return LazyWalk(d=d, vertices=tuple(vertices), pairs=tuple(pairs))
