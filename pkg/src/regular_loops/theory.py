"""
Closed forms for loop counts under the configuration model G(d, n).

A uniform non-backtracking walk on a G(d, n) sample can be generated together
with the graph, pairing a half-edge only when the walk first uses it. Step j
(j = 1, 2, ...) then lands on an already visited vertex with probability

    ((d - 1) + (j - 1)(d - 2)) / (dn - (2j - 1))

which gives exact products for the walk staying self-avoiding, and for the
walk closing up into a simple loop at step k with probability
(d - 1) / (dn - (2k - 1)). Everything here is exact rational arithmetic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from regular_loops.errors import InvalidInputError, OddHalfEdges

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactProbability:
    d: int
    n: int
    k: int
    value: Fraction
    length_out_of_range: bool = False

    def __float__(self) -> float:
        return float(self.value)


def _check(d: int, n: int, k: int) -> None:
    if d < 1 or n < 1:
        raise InvalidInputError(f"d and n must be positive, got d={d}, n={n}")
    if k < 1:
        raise InvalidInputError(f"length must be >= 1, got {k}")
    if (d * n) % 2:
        raise OddHalfEdges(f"dn = {d * n} is odd")


def _collision_factor(d: int, n: int, j: int) -> Fraction:
    """Probability that step j of the walk stays on fresh vertices"""
    return 1 - Fraction((d - 1) + (j - 1) * (d - 2), d * n - (2 * j - 1))


def exact_simple_closed_prob(d: int, n: int, k: int) -> ExactProbability:
    """Probability that a uniform non-backtracking walk of length k is a closed simple loop"""
    _check(d, n, k)
    if k > n:
        logger.warning(f"k={k} > n={n}: no simple loop is that long, returning 0")
        return ExactProbability(d, n, k, Fraction(0), length_out_of_range=True)
    if d == 1:
        return ExactProbability(d, n, k, Fraction(0))
    value = Fraction(1)
    for j in range(1, k):
        value *= _collision_factor(d, n, j)
    value *= Fraction(d - 1, d * n - (2 * k - 1))
    return ExactProbability(d, n, k, value)


def exact_expected_simple(d: int, n: int, k: int) -> Fraction:
    """E[N_simp(k)] = n d (d-1)^(k-1) p / k, exact under G(d, n)"""
    p = exact_simple_closed_prob(d, n, k).value
    return Fraction(n * d * (d - 1) ** (k - 1)) * p / k


def asymptotic_count(d: int, k: int) -> Fraction:
    """(d-1)^k / k, the common limit of E[N_simp(k)] and E[N_prim(k)] for short loops"""
    if d < 2 or k < 1:
        raise InvalidInputError(f"need d >= 2 and k >= 1, got d={d}, k={k}")
    return Fraction((d - 1) ** k, k)


def predicted_ratio(d: int, n: int, k: int) -> float:
    """
    Heuristic k E[N_simp(k)] / (d-1)^k, a stand-in for E[N_simp]/E[N_prim].

    Only used to pick sweep grids and thresholds. At k = 1 the value exceeds 1
    because (d-1)^k undercounts the primitive loops there.
    """
    if k > n:
        raise InvalidInputError(f"predicted_ratio needs k <= n, got k={k}, n={n}")
    if k == 1:
        logger.debug("predicted_ratio at k=1 is a boundary case and may exceed 1")
    return float(k * exact_expected_simple(d, n, k) / Fraction((d - 1) ** k))


def primitive_upper_bound(d: int, n: int, r: int) -> int:
    """The universal bound N_prim(r) <= n d^r"""
    if r < 1:
        raise InvalidInputError(f"length must be >= 1, got {r}")
    return n * d ** r


def exact_simple_walk_prob(d: int, n: int, k: int) -> Fraction:
    """Probability that a uniform non-backtracking walk of length k visits k + 1 distinct vertices"""
    _check(d, n, k)
    if k >= n:
        return Fraction(0)
    if d == 1:
        return Fraction(1) if k == 1 else Fraction(0)
    value = Fraction(1)
    for j in range(1, k + 1):
        value *= _collision_factor(d, n, j)
    return value


def expected_simple_paths(d: int, n: int, j: int) -> Fraction:
    """Expected number of self-avoiding non-backtracking walks of length j"""
    return Fraction(n * d * (d - 1) ** (j - 1)) * exact_simple_walk_prob(d, n, j)
