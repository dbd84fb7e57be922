"""
Adjacency and non-backtracking spectra of regular multigraphs.

For a simple d-regular graph with adjacency eigenvalues lambda_i, the
non-backtracking matrix has eigenvalues

    mu_i^(+/-) = (lambda_i +/- sqrt(lambda_i^2 - 4(d-1))) / 2

together with +1 and -1, each with multiplicity m - n (m = nd/2 edges).
That mapping is only applied to simple graphs; multigraphs are diagonalized
directly. Eigensolvers are judged by residual bounds, not by the routine used.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.optimize import linear_sum_assignment

from regular_loops.config import Budgets
from regular_loops.errors import (
    BudgetExceeded,
    ConvergenceFailure,
    DomainError,
    InvalidInputError,
    MissingPerron,
    SpectralUnavailable,
    TooFewEigenvalues,
)
from regular_loops.graphs.multigraph import Multigraph, adjacency_matrix, is_simple

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9
PERRON_TOLERANCE = 1e-6
# Eigenvalues of a non-normal matrix can be perturbed by ~sqrt(eps) near
# clustered or defective values, so error estimates never go below this.
EIGENVALUE_ERROR_FLOOR = math.sqrt(np.finfo(float).eps)


@dataclass(frozen=True)
class AdjacencySpectrum:
    eigenvalues: np.ndarray
    residual: float

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class NbSpectrum:
    eigenvalues: np.ndarray
    residual: float
    source: str


@dataclass(frozen=True)
class GapBound:
    epsilon: float
    f_value: float
    bound: float
    delta: float


@dataclass(frozen=True)
class SpectralReport:
    adjacency_eigenvalues: np.ndarray
    lambda_gap: Optional[float]
    nb_eigenvalues: np.ndarray
    mu_second: float
    residual_bound: float
    source: str

    def to_json(self) -> Dict[str, Any]:
        ordered = canonical_sort(self.nb_eigenvalues)
        return {
            "adjacency": [float(x) for x in self.adjacency_eigenvalues],
            "lambda": self.lambda_gap,
            "mu": float(self.mu_second),
            "nb": [[float(z.real), float(z.imag)] for z in ordered],
            "residual": float(self.residual_bound),
        }


def adjacency_spectrum(g: Multigraph) -> AdjacencySpectrum:
    """All n eigenvalues of the adjacency matrix, descending"""
    matrix = adjacency_matrix(g).astype(np.float64)
    try:
        values, vectors = scipy.linalg.eigh(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"symmetric eigensolver failed on n={g.n}: {e}") from e
    residual = float(np.max(np.linalg.norm(matrix @ vectors - vectors * values, axis=0)))
    if residual > RESIDUAL_TOLERANCE * g.d:
        raise ConvergenceFailure(f"adjacency residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE * g.d:.3e}")
    order = np.argsort(values)[::-1]
    return AdjacencySpectrum(eigenvalues=values[order], residual=residual)


def lambda_gap(spectrum: Union[AdjacencySpectrum, Sequence[float]]) -> float:
    """max(|lambda_2|, |lambda_n|) of a descending spectrum"""
    values = spectrum.eigenvalues if isinstance(spectrum, AdjacencySpectrum) else np.asarray(spectrum, dtype=float)
    if len(values) < 2:
        raise TooFewEigenvalues(f"lambda needs at least 2 eigenvalues, got {len(values)}")
    values = np.sort(values)[::-1]
    return float(max(abs(values[1]), abs(values[-1])))


def gk_map(adjacency_eigenvalues: Sequence[float], d: int, n: int) -> np.ndarray:
    """Non-backtracking eigenvalues of a simple d-regular graph from its adjacency eigenvalues"""
    lambdas = np.asarray(adjacency_eigenvalues, dtype=np.float64)
    if len(lambdas) != n:
        raise InvalidInputError(f"expected {n} adjacency eigenvalues, got {len(lambdas)}")
    if d < 2 or (n * d) % 2:
        raise InvalidInputError(f"gk_map needs d >= 2 and nd even, got d={d}, n={n}")
    roots = np.sqrt(lambdas.astype(np.complex128) ** 2 - 4 * (d - 1))
    plus = (lambdas + roots) / 2
    minus = (lambdas - roots) / 2
    multiplicity = n * d // 2 - n
    trivial = np.concatenate([np.ones(multiplicity), -np.ones(multiplicity)]).astype(np.complex128)
    return np.concatenate([plus, minus, trivial])


def nb_matrix(g: Multigraph) -> scipy.sparse.csr_matrix:
    """Sparse 0/1 non-backtracking matrix indexed by tail half-edges"""
    rows: List[int] = []
    cols: List[int] = []
    d = g.d
    for e in range(g.half_edges):
        arrival = g.pairing[e]
        base = (arrival // d) * d
        for f in range(base, base + d):
            if f != arrival:
                rows.append(e)
                cols.append(f)
    data = np.ones(len(rows), dtype=np.float64)
    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(g.half_edges, g.half_edges))


def nb_spectrum_direct(g: Multigraph, budget: Optional[int] = None) -> NbSpectrum:
    """All n*d eigenvalues of the explicitly assembled non-backtracking matrix"""
    budget = Budgets.from_env().direct if budget is None else budget
    if g.half_edges > budget:
        raise BudgetExceeded(f"n*d = {g.half_edges} exceeds the direct diagonalization budget {budget}")
    matrix = nb_matrix(g).toarray()
    try:
        values, vectors = scipy.linalg.eig(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"general eigensolver failed on n*d={g.half_edges}: {e}") from e
    if not np.all(np.isfinite(values)):
        raise ConvergenceFailure("general eigensolver returned non-finite eigenvalues")
    norms = np.linalg.norm(vectors, axis=0)
    residual = float(np.max(np.linalg.norm(matrix @ vectors - vectors * values, axis=0) / norms))
    logger.debug(f"Direct non-backtracking spectrum n*d={g.half_edges}, residual {residual:.2e}")
    return NbSpectrum(eigenvalues=values.astype(np.complex128), residual=residual, source="direct")


def nb_spectrum(g: Multigraph, budgets: Optional[Budgets] = None) -> NbSpectrum:
    """Mapped spectrum for simple graphs, direct diagonalization otherwise"""
    budgets = budgets or Budgets.from_env()
    if g.d >= 2 and is_simple(g):
        adjacency = adjacency_spectrum(g)
        return NbSpectrum(
            eigenvalues=gk_map(adjacency.eigenvalues, g.d, g.n),
            residual=adjacency.residual,
            source="gk",
        )
    if g.half_edges <= budgets.direct:
        return nb_spectrum_direct(g, budgets.direct)
    raise SpectralUnavailable(
        f"graph is not simple and n*d = {g.half_edges} exceeds the direct budget {budgets.direct}"
    )


def canonical_sort(values: Sequence[complex], decimals: int = 8) -> np.ndarray:
    """Sort by real part then imaginary part, comparing rounded values first"""
    array = np.asarray(values, dtype=np.complex128)
    keys = sorted(
        range(len(array)),
        key=lambda i: (
            round(float(array[i].real), decimals),
            round(float(array[i].imag), decimals),
            float(array[i].real),
            float(array[i].imag),
        ),
    )
    return array[keys]


def multiset_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Largest matched gap under the optimal one-to-one matching of two multisets"""
    left = np.asarray(a, dtype=np.complex128)
    right = np.asarray(b, dtype=np.complex128)
    if len(left) != len(right):
        return math.inf
    if len(left) == 0:
        return 0.0
    cost = np.abs(left[:, None] - right[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def f_map(x: float, d: int) -> float:
    """f(x) = (x + sqrt(x^2 - 4(d-1))) / 2 on [2 sqrt(d-1), inf)"""
    discriminant = x * x - 4 * (d - 1)
    if discriminant < 0:
        if discriminant > -1e-12:
            discriminant = 0.0
        else:
            raise DomainError(f"f({x}) is not real for d={d}: need x >= 2*sqrt(d-1) = {2 * math.sqrt(d - 1):.6f}")
    return (x + math.sqrt(discriminant)) / 2


def gap_bound(epsilon: float, d: int) -> GapBound:
    """Bound on mu implied by lambda <= d - epsilon"""
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    f_value = f_map(d - epsilon, d)
    bound = max(math.sqrt(d - 1), f_value)
    return GapBound(epsilon=epsilon, f_value=f_value, bound=bound, delta=(d - 1) - bound)


def mu_second(nb_eigenvalues: Sequence[complex], d: int, tolerance: float = PERRON_TOLERANCE) -> float:
    """Largest magnitude left after removing one copy of the Perron value d - 1"""
    values = np.asarray(nb_eigenvalues, dtype=np.complex128)
    if len(values) == 0:
        raise MissingPerron("empty spectrum")
    gaps = np.abs(values - (d - 1))
    index = int(np.argmin(gaps))
    if gaps[index] > tolerance:
        raise MissingPerron(f"no eigenvalue within {tolerance} of d-1 = {d - 1}")
    rest = np.delete(values, index)
    return float(np.max(np.abs(rest))) if len(rest) else 0.0


def spectral_report(g: Multigraph, budgets: Optional[Budgets] = None) -> SpectralReport:
    adjacency = adjacency_spectrum(g)
    nb = nb_spectrum(g, budgets)
    gap = lambda_gap(adjacency) if g.n >= 2 else None
    return SpectralReport(
        adjacency_eigenvalues=adjacency.eigenvalues,
        lambda_gap=gap,
        nb_eigenvalues=nb.eigenvalues,
        mu_second=mu_second(nb.eigenvalues, g.d),
        residual_bound=max(adjacency.residual, nb.residual),
        source=nb.source,
    )


def trace_deviation_bound(report: SpectralReport, k: int) -> float:
    """Upper bound on |N_tr(k) - (d-1)^k| from the non-Perron eigenvalues"""
    return (len(report.nb_eigenvalues) - 1) * report.mu_second ** k


def gk_discrepancy(g: Multigraph, budget: Optional[int] = None) -> float:
    """Distance between the mapped and the directly computed spectrum, for any graph"""
    adjacency = adjacency_spectrum(g)
    mapped = gk_map(adjacency.eigenvalues, g.d, g.n)
    direct = nb_spectrum_direct(g, budget)
    distance = multiset_distance(mapped, direct.eigenvalues)
    if not is_simple(g):
        logger.info(f"Mapped vs direct spectrum on a multigraph (n={g.n}): distance {distance:.3e}")
    return distance


def spectral_trace_terms(nb_eigenvalues: np.ndarray, d: int, k: int, residual: float) -> Tuple[float, float]:
    """
    (d-1)^k (1 + sum_{i>=2} (mu_i/(d-1))^k) and its relative error estimate.

    The estimate propagates a per-eigenvalue error of max(residual, sqrt(eps)*(d-1))
    to first order and adds rounding of the sum.
    """
    values = np.asarray(nb_eigenvalues, dtype=np.complex128)
    scale = float(d - 1)
    index = int(np.argmin(np.abs(values - scale)))
    if abs(values[index] - scale) > PERRON_TOLERANCE:
        raise MissingPerron(f"no eigenvalue within {PERRON_TOLERANCE} of d-1 = {d - 1}")
    ratios = np.delete(values, index) / scale
    powers = ratios ** k
    normalized = 1.0 + complex(np.sum(powers))
    value = scale ** k * normalized.real
    delta = max(residual, EIGENVALUE_ERROR_FLOOR * scale) / scale
    magnitudes = np.abs(ratios)
    propagated = k * delta * (1.0 + float(np.sum(magnitudes ** (k - 1))))
    rounding = len(values) * np.finfo(float).eps * (1.0 + float(np.sum(magnitudes ** k)))
    denominator = max(abs(normalized.real), np.finfo(float).tiny)
    return value, (propagated + rounding) / denominator
