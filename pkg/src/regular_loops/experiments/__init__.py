"""
Monte Carlo experiments: sweeps, estimators, transition curves, walk statistics
and spectral-gap surveys.
"""

from regular_loops.experiments.estimators import (
    Moments,
    ProbabilityEstimate,
    RatioEstimate,
    concentration_check,
    estimate_moments,
    proportion_estimate,
    ratio_estimate,
)
from regular_loops.experiments.survey import GapSurvey, gap_flags, spectral_gap_survey
from regular_loops.experiments.sweep import (
    CSV_COLUMNS,
    SweepConfig,
    SweepResult,
    SweepRow,
    plan_cells,
    run_sweep,
)
from regular_loops.experiments.transition import Thresholds, TransitionPoint, check_transition, transition_curve
from regular_loops.experiments.walks import (
    WalkIntersection,
    excess_tail_probability,
    walk_intersection_probability,
)

__all__ = [
    "Moments",
    "ProbabilityEstimate",
    "RatioEstimate",
    "concentration_check",
    "estimate_moments",
    "proportion_estimate",
    "ratio_estimate",
    "GapSurvey",
    "gap_flags",
    "spectral_gap_survey",
    "CSV_COLUMNS",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "plan_cells",
    "run_sweep",
    "Thresholds",
    "TransitionPoint",
    "check_transition",
    "transition_curve",
    "WalkIntersection",
    "excess_tail_probability",
    "walk_intersection_probability",
]
