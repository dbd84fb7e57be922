"""
Self-intersection statistics of random non-backtracking walks.

Each walk runs on its own lazily revealed G(d, n) sample, so no graph is ever
built in full.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict

from regular_loops.errors import InvalidInputError
from regular_loops.experiments.estimators import ProbabilityEstimate, proportion_estimate
from regular_loops.graphs.sampler import RandomSource, as_generator, sample_lazy_nb_walk
from regular_loops.loops.nbcore import excess_from_pairs
from regular_loops.theory import exact_simple_walk_prob

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WalkIntersection:
    observed: ProbabilityEstimate
    exact: float

    def to_json(self) -> Dict[str, Any]:
        payload = self.observed.to_json()
        payload["exact"] = self.exact
        return payload


def _check(d: int, n: int, k: int, walks: int) -> None:
    if walks < 1:
        raise InvalidInputError(f"walks must be >= 1, got {walks}")
    if k < 1:
        raise InvalidInputError(f"walk length must be >= 1, got {k}")
    if d < 2:
        raise InvalidInputError("non-backtracking walks need d >= 2")
    if (n * d) % 2:
        raise InvalidInputError(f"n*d = {n * d} is odd")


def excess_tail_probability(d: int, n: int, k: int, walks: int, rng: RandomSource) -> ProbabilityEstimate:
    """Share of walks of length k whose traversed edges have cycle rank at least 2"""
    _check(d, n, k, walks)
    if k == 1:
        return proportion_estimate(0, walks)
    gen = as_generator(rng)
    hits = 0
    for _ in range(walks):
        walk = sample_lazy_nb_walk(d, n, k, gen)
        if walk.self_intersects() and excess_from_pairs(walk.pairs, d) >= 2:
            hits += 1
    logger.info(f"Excess tail d={d} n={n} k={k}: {hits}/{walks}")
    return proportion_estimate(hits, walks)


def walk_intersection_probability(d: int, n: int, k: int, walks: int, rng: RandomSource) -> WalkIntersection:
    """Share of walks that revisit a vertex, next to the exact value 1 - P(self-avoiding)"""
    _check(d, n, k, walks)
    gen = as_generator(rng)
    hits = sum(1 for _ in range(walks) if sample_lazy_nb_walk(d, n, k, gen).self_intersects())
    exact = 1.0 - float(exact_simple_walk_prob(d, n, k))
    logger.info(f"Walk intersection d={d} n={n} k={k}: {hits}/{walks} (exact {exact:.6g})")
    return WalkIntersection(observed=proportion_estimate(hits, walks), exact=exact)
