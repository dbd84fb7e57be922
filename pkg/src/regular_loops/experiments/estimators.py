"""Moment, ratio and proportion estimators shared by the experiments"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy import stats

from regular_loops.errors import InvalidInputError, TooFewSamples

Number = Union[int, float]

Z_95 = 1.959963984540054


class Moments(NamedTuple):
    mean: float
    second_moment: float
    standard_error: float


@dataclass(frozen=True)
class RatioEstimate:
    """R = scale * mean(numerator) / mean(denominator) with a delta-method interval"""
    value: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]

    @property
    def undefined(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class ProbabilityEstimate:
    successes: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float

    def to_json(self):
        return {
            "successes": self.successes,
            "trials": self.trials,
            "estimate": self.estimate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }


def _as_floats(samples: Sequence[Number]) -> np.ndarray:
    return np.array([float(s) for s in samples], dtype=np.float64)


def estimate_moments(samples: Sequence[Number]) -> Moments:
    """Mean, raw second moment and standard error of the mean"""
    if len(samples) < 2:
        raise TooFewSamples(f"need at least 2 samples, got {len(samples)}")
    values = _as_floats(samples)
    return Moments(
        mean=float(values.mean()),
        second_moment=float(np.mean(values * values)),
        standard_error=float(values.std(ddof=1) / math.sqrt(len(values))),
    )


def concentration_check(samples: Sequence[Number], center: float, epsilon: float) -> float:
    """Share of samples s with |s / center - 1| < epsilon"""
    if len(samples) < 1:
        raise TooFewSamples("need at least 1 sample")
    if center <= 0:
        raise InvalidInputError(f"center must be positive, got {center}")
    values = _as_floats(samples)
    return float(np.mean(np.abs(values / center - 1.0) < epsilon))


def ratio_estimate(
    numerators: Sequence[Number],
    denominators: Sequence[Number],
    scale: float = 1.0,
    z: float = Z_95,
) -> RatioEstimate:
    """
    scale * mean(numerators) / mean(denominators).

    Samples are paired by replicate; the interval uses the delta method with
    the sample covariance. A zero denominator mean leaves the ratio undefined.
    """
    x = _as_floats(numerators)
    y = _as_floats(denominators)
    if len(x) != len(y) or len(x) == 0:
        raise InvalidInputError(f"need equally many paired samples, got {len(x)} and {len(y)}")
    x_bar = float(x.mean())
    y_bar = float(y.mean())
    if y_bar == 0:
        return RatioEstimate(None, None, None)
    value = scale * x_bar / y_bar
    if len(x) < 2:
        return RatioEstimate(value, None, None)
    cov = np.cov(np.vstack([x, y]), ddof=1) / len(x)
    q = x_bar / y_bar
    variance = (cov[0, 0] - 2 * q * cov[0, 1] + q * q * cov[1, 1]) / (y_bar * y_bar)
    half_width = z * abs(scale) * math.sqrt(max(float(variance), 0.0))
    return RatioEstimate(value, value - half_width, value + half_width)


def proportion_estimate(successes: int, trials: int, confidence: float = 0.95) -> ProbabilityEstimate:
    """Observed proportion with a Wilson score interval"""
    if trials < 1:
        raise TooFewSamples("need at least one trial")
    interval = stats.binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return ProbabilityEstimate(
        successes=successes,
        trials=trials,
        estimate=successes / trials,
        ci_low=float(interval.low),
        ci_high=float(interval.high),
    )
