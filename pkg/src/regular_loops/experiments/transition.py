"""
Transition curves R(k) = k * mean(N_simp) / mean(N_tr) and the documented
acceptance thresholds they are checked against.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

from regular_loops.errors import InvalidInputError, MissingCounts
from regular_loops.experiments.sweep import SweepResult
from regular_loops.loops.census import CountMethod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionPoint:
    n: int
    k: int
    ratio: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]
    method: str
    nsimp_source: Optional[str]

    @property
    def undefined(self) -> bool:
        return self.ratio is None

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "ratio": self.ratio,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "method": self.method,
            "nsimp_source": self.nsimp_source,
            "undefined": self.undefined,
        }


@dataclass(frozen=True)
class Thresholds:
    """Artifact constants for the desk-scale transition and concentration checks"""
    low_k: int = 5
    low_min_ratio: float = 0.9
    high_k: int = 80
    high_max_ratio: float = 0.15
    concentration_min: float = 0.85
    second_moment_range: Tuple[float, float] = (0.8, 1.5)


def transition_curve(
    sweep: SweepResult,
    n: Optional[int] = None,
    method: Optional[Union[str, CountMethod]] = None,
) -> List[TransitionPoint]:
    """
    R(k) per k for one n value, using exact traces when present and spectral ones otherwise.

    Raises:
        InvalidInputError: several n values and none selected
        MissingCounts: no trace counts for the selected n
    """
    n_values = sorted({row.n for row in sweep.rows})
    if n is None:
        if len(n_values) != 1:
            raise InvalidInputError(f"sweep covers n = {n_values}; pick one")
        n = n_values[0]
    if method is not None:
        preferred = [CountMethod.parse(method).value]
    else:
        preferred = [CountMethod.EXACT_TRACE.value, CountMethod.SPECTRAL.value]

    points = []
    for k in sorted({row.k for row in sweep.rows if row.n == n}):
        candidates = [
            row for name in preferred for row in sweep.rows
            if row.n == n and row.k == k and row.method == name and not row.skipped
        ]
        if not candidates:
            continue
        row = candidates[0]
        points.append(
            TransitionPoint(
                n=n,
                k=k,
                ratio=row.ratio_R,
                ci_low=row.ratio_CI_low,
                ci_high=row.ratio_CI_high,
                method=row.method,
                nsimp_source=row.nsimp_source,
            )
        )
    if not points:
        raise MissingCounts(f"no closed-walk counts for n={n} (methods tried: {preferred})")
    return points


def check_transition(curve: List[TransitionPoint], thresholds: Optional[Thresholds] = None) -> List[str]:
    """Failed checks as messages; an empty list means the curve passes"""
    thresholds = thresholds or Thresholds()
    failures = []
    defined = [p for p in curve if not p.undefined]
    for previous, current in zip(defined, defined[1:]):
        if not current.ratio < previous.ratio:
            failures.append(f"R({current.k}) = {current.ratio:.4f} is not below R({previous.k}) = {previous.ratio:.4f}")
    by_k = {p.k: p for p in defined}
    low = by_k.get(thresholds.low_k)
    if low is not None and low.ratio < thresholds.low_min_ratio:
        failures.append(f"R({low.k}) = {low.ratio:.4f} < {thresholds.low_min_ratio}")
    high = by_k.get(thresholds.high_k)
    if high is not None and high.ratio > thresholds.high_max_ratio:
        failures.append(f"R({high.k}) = {high.ratio:.4f} > {thresholds.high_max_ratio}")
    for failure in failures:
        logger.warning(failure)
    return failures
