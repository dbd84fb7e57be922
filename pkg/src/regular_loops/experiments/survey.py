"""Empirical spectral gaps of random regular graphs"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

from regular_loops.config import Budgets
from regular_loops.errors import DomainError, InvalidInputError
from regular_loops.graphs.factory import GraphModel, GraphModelFactory
from regular_loops.graphs.multigraph import Multigraph
from regular_loops.graphs.sampler import RandomSource, as_generator
from regular_loops.spectra import gap_bound, spectral_report

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class GapSurvey:
    d: int
    n: int
    epsilon: float
    replicates: int
    share_lambda: float
    share_mu: float
    mu_bound: float
    violations: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "n": self.n,
            "epsilon": self.epsilon,
            "replicates": self.replicates,
            "share_lambda": self.share_lambda,
            "share_mu": self.share_mu,
            "mu_bound": self.mu_bound,
            "violations": self.violations,
        }


def mu_bound_for(epsilon: float, d: int) -> float:
    """max(sqrt(d-1), f(d - epsilon)), or sqrt(d-1) where f(d - epsilon) is not real"""
    try:
        return gap_bound(epsilon, d).bound
    except DomainError:
        if epsilon <= 0:
            raise
        return math.sqrt(d - 1)


def gap_flags(g: Multigraph, epsilon: float, budgets: Optional[Budgets] = None) -> Tuple[bool, bool, bool]:
    """(lambda <= d - epsilon, mu <= bound, lemma violated) for one graph"""
    report = spectral_report(g, budgets)
    bound = mu_bound_for(epsilon, g.d)
    lambda_ok = report.lambda_gap is not None and report.lambda_gap <= g.d - epsilon
    mu_ok = report.mu_second <= bound + BOUND_SLACK
    return lambda_ok, mu_ok, lambda_ok and not mu_ok


def spectral_gap_survey(
    d: int,
    n: int,
    replicates: int,
    epsilon: float,
    rng: RandomSource,
    model: Union[str, GraphModel] = GraphModel.UNIFORM_SIMPLE,
    budgets: Optional[Budgets] = None,
) -> GapSurvey:
    """Shares of sampled graphs with lambda <= d - epsilon and with mu under the implied bound"""
    if replicates < 1:
        raise InvalidInputError(f"replicates must be >= 1, got {replicates}")
    if n < 2:
        raise InvalidInputError("lambda needs n >= 2")
    budgets = budgets or Budgets.from_env()
    sampler = GraphModelFactory.create_sampler(model, budgets)
    gen = as_generator(rng)
    lambda_hits = mu_hits = violations = 0
    for _ in range(replicates):
        lambda_ok, mu_ok, violated = gap_flags(sampler(d, n, gen), epsilon, budgets)
        lambda_hits += lambda_ok
        mu_hits += mu_ok
        violations += violated
    if violations:
        logger.warning(f"{violations} graph(s) with lambda <= d - {epsilon} broke the mu bound")
    return GapSurvey(
        d=d,
        n=n,
        epsilon=epsilon,
        replicates=replicates,
        share_lambda=lambda_hits / replicates,
        share_mu=mu_hits / replicates,
        mu_bound=mu_bound_for(epsilon, d),
        violations=violations,
    )
