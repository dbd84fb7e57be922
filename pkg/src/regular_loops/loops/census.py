"""
Exact and spectral loop counts.

N_simp(k) comes from a depth-first search rooted at the minimum vertex of
each loop. N_tr(k) = Trace(A~^k) is computed in exact integers by applying
the non-backtracking operator to blocks of basis vectors. N_prim and N_all
follow from the divisor identity N_tr(k) = sum_{r | k} r * N_prim(r).
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np

from regular_loops.config import Budgets
from regular_loops.errors import (
    BudgetExceeded,
    CensusMismatch,
    DivisibilityViolation,
    InvalidConfig,
    InvalidInputError,
    LengthOutOfRange,
    ResourceBudgetExceeded,
    SpectralUnavailable,
)
from regular_loops.graphs.multigraph import Multigraph
from regular_loops.loops.arith import divisors, mobius
from regular_loops.loops.nbcore import NbLoop, canonical_loop, nb_successors
from regular_loops.spectra import nb_spectrum, spectral_trace_terms
from regular_loops.theory import expected_simple_paths

logger = logging.getLogger(__name__)

DENSE_WITNESS_LIMIT = 64
# Keep int64 blocks well clear of overflow; anything larger runs on Python ints.
INT64_SAFE = 1 << 62
BLOCK_ELEMENTS = 1 << 20


class CountMethod(str, Enum):
    DFS = "dfs"
    EXACT_TRACE = "exact-trace"
    SPECTRAL = "spectral"

    @classmethod
    def parse(cls, value: Union[str, "CountMethod"]) -> "CountMethod":
        if isinstance(value, CountMethod):
            return value
        normalized = str(value).strip().lower().replace("_", "-")
        for method in cls:
            if method.value == normalized:
                return method
        raise InvalidConfig(f"Unknown counting method: {value!r} (expected one of {[m.value for m in cls]})")


@dataclass(frozen=True)
class SpectralCount:
    value: float
    rel_error: float
    source: str


@dataclass(frozen=True)
class LoopCensus:
    """Loop counts of one graph at one length; None marks a method that did not run"""
    k: int
    n_simp: Optional[int] = None
    n_prim: Optional[int] = None
    n_tr: Optional[int] = None
    n_all: Optional[int] = None
    n_tr_spectral: Optional[float] = None
    n_prim_spectral: Optional[float] = None
    spectral_rel_error: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"k": self.k}
        for name in ("n_simp", "n_prim", "n_tr", "n_all"):
            value = getattr(self, name)
            payload[name] = None if value is None else str(value)
        if self.n_tr_spectral is not None:
            payload["n_tr_spectral"] = self.n_tr_spectral
            payload["n_prim_spectral"] = self.n_prim_spectral
            payload["spectral_rel_error"] = self.spectral_rel_error
        return payload


# ---------------------------------------------------------------------------
# Simple loops
# ---------------------------------------------------------------------------


def _bounded_distances(g: Multigraph, root: int, radius: int) -> Dict[int, int]:
    """BFS distances from root inside the vertices >= root, up to radius"""
    d = g.d
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for h in range(u * d, u * d + d):
            x = g.head(h)
            if x >= root and x not in dist:
                dist[x] = dist[u] + 1
                queue.append(x)
    return dist


def estimate_dfs_cost(d: int, n: int, k: int) -> float:
    """Expected number of self-avoiding non-backtracking paths a length-k search explores"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    return float(sum(expected_simple_paths(d, n, j) for j in range(1, k)))


def count_simple_loops(g: Multigraph, k: int, budget: Optional[int] = None) -> int:
    """
    Number of oriented simple non-backtracking loops of length k.

    Every loop is found exactly once, from its minimum vertex, along the
    directed edge it leaves that vertex by. Branches are cut when the vertex
    reached cannot return to the root in the steps left.

    Raises:
        LengthOutOfRange: k < 1 or k > n
        BudgetExceeded: more than `budget` path expansions
    """
    if k < 1 or k > g.n:
        raise LengthOutOfRange(f"simple loops need 1 <= k <= n = {g.n}, got {k}")
    budget = Budgets.from_env().dfs if budget is None else budget
    d = g.d
    pairing = g.pairing
    heads = [p // d for p in pairing]

    if k == 1:
        return sum(1 for h in range(g.half_edges) if heads[h] == h // d)

    radius = k // 2
    on_path = [False] * g.n
    total = 0
    expansions = 0
    for root in range(g.n):
        dist = _bounded_distances(g, root, radius)

        def reachable(x: int, remaining: int) -> bool:
            dx = dist.get(x)
            if dx is None:
                return remaining > radius
            return dx <= remaining

        for first in range(root * d, root * d + d):
            w = heads[first]
            if w <= root or not reachable(w, k - 1):
                continue
            # (edge, depth) entries; depth -1 marks leaving the vertex stored in edge
            stack: List[Tuple[int, int]] = [(first, 1)]
            while stack:
                e, depth = stack.pop()
                if depth < 0:
                    on_path[e] = False
                    continue
                expansions += 1
                if expansions > budget:
                    raise BudgetExceeded(f"simple loop search at k={k} exceeded {budget} path expansions")
                u = heads[e]
                arrival = pairing[e]
                base = u * d
                if depth == k - 1:
                    for f in range(base, base + d):
                        if f != arrival and heads[f] == root and pairing[f] != first:
                            total += 1
                    continue
                on_path[u] = True
                stack.append((u, -1))
                remaining = k - depth - 1
                for f in range(base, base + d):
                    if f == arrival:
                        continue
                    x = heads[f]
                    if x <= root or on_path[x] or not reachable(x, remaining):
                        continue
                    stack.append((f, depth + 1))
    logger.debug(f"count_simple_loops n={g.n} d={d} k={k}: {total} loops, {expansions} expansions")
    return total


# ---------------------------------------------------------------------------
# Closed walks and the divisor identity
# ---------------------------------------------------------------------------


def _successor_table(g: Multigraph) -> np.ndarray:
    table = np.empty((g.half_edges, g.d - 1), dtype=np.int64)
    for e in range(g.half_edges):
        table[e] = nb_successors(g, e)
    return table


def closed_nb_walk_traces(g: Multigraph, k_max: int, budget: Optional[int] = None) -> List[int]:
    """
    Exact [N_tr(1), ..., N_tr(k_max)] in one pass.

    Columns of the identity are pushed through A~ in blocks; after r steps the
    diagonal of the block contributes to Trace(A~^r). Blocks are reduced in
    ascending column order.
    """
    if k_max < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k_max}")
    budget = Budgets.from_env().trace if budget is None else budget
    size = g.half_edges
    if size * k_max > budget:
        raise ResourceBudgetExceeded(
            f"exact trace needs n*d*k = {size * k_max} operator applications, budget is {budget}"
        )
    traces = [0] * k_max
    if g.d < 2:
        return traces

    successors = _successor_table(g)
    exact_ints = size * (g.d - 1) ** k_max >= INT64_SAFE
    dtype = object if exact_ints else np.int64
    width = max(1, min(size, BLOCK_ELEMENTS // (size * (g.d - 1))))
    for start in range(0, size, width):
        stop = min(size, start + width)
        columns = np.arange(stop - start)
        block = np.zeros((size, stop - start), dtype=dtype)
        block[start + columns, columns] = 1
        for r in range(k_max):
            block = block[successors].sum(axis=1)
            traces[r] += int(sum(block[start + columns, columns]))
    if exact_ints:
        logger.debug(f"Exact trace on Python integers (n*d={size}, k_max={k_max})")
    return traces


def count_closed_nb_walks_exact(g: Multigraph, k: int, budget: Optional[int] = None) -> int:
    """Trace(A~^k) in exact integer arithmetic"""
    return closed_nb_walk_traces(g, k, budget)[k - 1]


def count_closed_nb_walks_dense(g: Multigraph, k: int) -> int:
    """Dense integer matrix power; a second witness for n*d <= 64"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    if g.half_edges > DENSE_WITNESS_LIMIT:
        raise ResourceBudgetExceeded(f"dense witness is limited to n*d <= {DENSE_WITNESS_LIMIT}")
    size = g.half_edges
    matrix = np.zeros((size, size), dtype=object)
    for e in range(size):
        for f in nb_successors(g, e):
            matrix[e, f] += 1
    power = matrix.copy()
    for _ in range(k - 1):
        power = power.dot(matrix)
    return int(sum(power[i, i] for i in range(size)))


def primitive_from_traces(traces: Sequence[int], k: int) -> int:
    """k * N_prim(k) = sum_{r | k} mobius(k / r) * N_tr(r), with traces[r - 1] = N_tr(r)"""
    weighted = sum(mobius(k // r) * traces[r - 1] for r in divisors(k))
    if weighted % k:
        raise DivisibilityViolation(f"Moebius sum {weighted} is not divisible by k={k}")
    return weighted // k


def count_primitive_loops(g: Multigraph, k: int, budget: Optional[int] = None) -> int:
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    return primitive_from_traces(closed_nb_walk_traces(g, k, budget), k)


def count_all_loops(g: Multigraph, k: int, budget: Optional[int] = None) -> int:
    """Every length-k loop is a power of one primitive loop whose length divides k"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    traces = closed_nb_walk_traces(g, k, budget)
    return sum(primitive_from_traces(traces, r) for r in divisors(k))


# ---------------------------------------------------------------------------
# Spectral estimates
# ---------------------------------------------------------------------------


def spectral_traces(
    g: Multigraph, lengths: Iterable[int], budgets: Optional[Budgets] = None
) -> Dict[int, SpectralCount]:
    """Spectral N_tr(r) for every requested r from a single diagonalization"""
    if g.d < 2:
        raise SpectralUnavailable("spectral traces need d >= 2")
    spectrum = nb_spectrum(g, budgets)
    counts = {}
    for r in lengths:
        value, rel_error = spectral_trace_terms(spectrum.eigenvalues, g.d, r, spectrum.residual)
        counts[r] = SpectralCount(value=value, rel_error=rel_error, source=spectrum.source)
    return counts


def count_closed_nb_walks_spectral(g: Multigraph, k: int, budgets: Optional[Budgets] = None) -> SpectralCount:
    """Floating-point N_tr(k) from the non-backtracking spectrum"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    return spectral_traces(g, [k], budgets)[k]


def count_primitive_loops_spectral(g: Multigraph, k: int, budgets: Optional[Budgets] = None) -> SpectralCount:
    """Moebius inversion over spectral traces"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    return primitive_from_spectral_traces(spectral_traces(g, divisors(k), budgets), k)


def primitive_from_spectral_traces(traces: Mapping[int, SpectralCount], k: int) -> SpectralCount:
    """Float Moebius inversion; traces must hold every divisor of k"""
    lengths = divisors(k)
    value = sum(mobius(k // r) * traces[r].value for r in lengths) / k
    absolute = sum(abs(traces[r].value) * traces[r].rel_error for r in lengths if mobius(k // r)) / k
    rel_error = absolute / max(abs(value), np.finfo(float).tiny)
    return SpectralCount(value=value, rel_error=rel_error, source=traces[k].source)


# ---------------------------------------------------------------------------
# Enumeration oracle
# ---------------------------------------------------------------------------


def enumerate_loops_oracle(g: Multigraph, k: int, budget: Optional[int] = None) -> List[NbLoop]:
    """Every distinct loop of length k, found by exhaustive search over rooted walks"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    budget = Budgets.from_env().oracle if budget is None else budget
    rooted = g.half_edges * (g.d - 1) ** (k - 1)
    if rooted > budget:
        raise BudgetExceeded(f"{rooted} rooted walks exceed the oracle budget {budget}")

    found: Set[Tuple[int, ...]] = set()
    loops: List[NbLoop] = []

    def extend(walk: List[int]) -> None:
        if len(walk) == k:
            if g.head(walk[-1]) == walk[0] // g.d and g.pairing[walk[-1]] != walk[0]:
                loop = canonical_loop(g, walk)
                if loop.edges not in found:
                    found.add(loop.edges)
                    loops.append(loop)
            return
        for f in nb_successors(g, walk[-1]):
            walk.append(f)
            extend(walk)
            walk.pop()

    for first in range(g.half_edges):
        extend([first])
    loops.sort(key=lambda loop: loop.edges)
    return loops


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------


def check_census(g: Multigraph, census: LoopCensus) -> None:
    k = census.k
    problems = []
    if census.n_simp is not None and census.n_prim is not None and census.n_simp > census.n_prim:
        problems.append(f"n_simp={census.n_simp} > n_prim={census.n_prim}")
    if census.n_prim is not None:
        if census.n_all is not None and census.n_prim > census.n_all:
            problems.append(f"n_prim={census.n_prim} > n_all={census.n_all}")
        if census.n_tr is not None and k * census.n_prim > census.n_tr:
            problems.append(f"k*n_prim={k * census.n_prim} > n_tr={census.n_tr}")
        if census.n_prim > g.n * g.d ** k:
            problems.append(f"n_prim={census.n_prim} above n*d^k")
    if census.n_tr is not None and census.n_tr_spectral is not None:
        tolerance = abs(census.n_tr) * (census.spectral_rel_error or 0.0) + 1e-6
        if abs(census.n_tr_spectral - census.n_tr) > tolerance:
            problems.append(f"spectral trace {census.n_tr_spectral} vs exact {census.n_tr}")
    if problems:
        raise CensusMismatch(f"census at k={k} on n={g.n}: " + "; ".join(problems))


def take_census(
    g: Multigraph,
    k: int,
    methods: Sequence[Union[str, CountMethod]] = (CountMethod.DFS, CountMethod.EXACT_TRACE),
    budgets: Optional[Budgets] = None,
) -> LoopCensus:
    """Run the requested methods at one length and cross-check wherever they overlap"""
    if k < 1:
        raise LengthOutOfRange(f"k must be >= 1, got {k}")
    budgets = budgets or Budgets.from_env()
    selected = {CountMethod.parse(m) for m in methods}
    if not selected:
        raise InvalidInputError("take_census needs at least one method")

    fields: Dict[str, Any] = {"k": k}
    if CountMethod.DFS in selected:
        fields["n_simp"] = count_simple_loops(g, k, budgets.dfs) if k <= g.n else 0
    if CountMethod.EXACT_TRACE in selected:
        traces = closed_nb_walk_traces(g, k, budgets.trace)
        fields["n_tr"] = traces[k - 1]
        fields["n_prim"] = primitive_from_traces(traces, k)
        fields["n_all"] = sum(primitive_from_traces(traces, r) for r in divisors(k))
    if CountMethod.SPECTRAL in selected:
        trace = count_closed_nb_walks_spectral(g, k, budgets)
        primitive = count_primitive_loops_spectral(g, k, budgets)
        fields["n_tr_spectral"] = trace.value
        fields["n_prim_spectral"] = primitive.value
        fields["spectral_rel_error"] = trace.rel_error

    census = LoopCensus(**fields)
    check_census(g, census)
    return census


__all__ = [
    "CountMethod",
    "LoopCensus",
    "SpectralCount",
    "closed_nb_walk_traces",
    "count_all_loops",
    "count_closed_nb_walks_dense",
    "count_closed_nb_walks_exact",
    "count_closed_nb_walks_spectral",
    "count_primitive_loops",
    "count_primitive_loops_spectral",
    "count_simple_loops",
    "divisors",
    "enumerate_loops_oracle",
    "estimate_dfs_cost",
    "mobius",
    "check_census",
    "primitive_from_spectral_traces",
    "primitive_from_traces",
    "spectral_traces",
    "take_census",
]
