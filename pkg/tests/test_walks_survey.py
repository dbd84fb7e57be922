import math

import pytest

from regular_loops.errors import InvalidInputError
from regular_loops.experiments import (
    excess_tail_probability,
    gap_flags,
    spectral_gap_survey,
    walk_intersection_probability,
)
from regular_loops.experiments.survey import mu_bound_for
from regular_loops.graphs import RngStream


class TestWalks:
    def test_single_edge_never_has_excess(self):
        estimate = excess_tail_probability(3, 100, 1, 50, RngStream(1).generator())
        assert estimate.successes == 0
        assert estimate.trials == 50

    def test_excess_is_common_on_tiny_graphs(self):
        estimate = excess_tail_probability(3, 10, 12, 300, RngStream(2).generator())
        assert estimate.successes > 0

    def test_excess_is_rare_for_short_walks(self):
        estimate = excess_tail_probability(3, 4000, 10, 2000, RngStream(3).generator())
        assert estimate.estimate <= 1e-2

    def test_intersection_matches_exact(self):
        walks = 3000
        result = walk_intersection_probability(3, 60, 10, walks, RngStream(4).generator())
        sd = math.sqrt(result.exact * (1 - result.exact) / walks)
        assert abs(result.observed.estimate - result.exact) <= 4 * sd
        assert "exact" in result.to_json()

    def test_reproducible(self):
        a = excess_tail_probability(3, 20, 8, 200, RngStream(9).generator())
        b = excess_tail_probability(3, 20, 8, 200, RngStream(9).generator())
        assert a == b

    def test_bad_input(self):
        with pytest.raises(InvalidInputError):
            excess_tail_probability(3, 10, 5, 0, RngStream(1).generator())
        with pytest.raises(InvalidInputError):
            walk_intersection_probability(1, 10, 5, 10, RngStream(1).generator())


class TestGapSurvey:
    def test_four_vertices(self):
        survey = spectral_gap_survey(3, 4, 5, 0.5, RngStream(5).generator())
        assert survey.share_lambda == 1
        assert survey.share_mu == 1
        assert survey.violations == 0
        assert survey.mu_bound == pytest.approx(math.sqrt(2))

    def test_bound_falls_back_to_ramanujan_value(self):
        assert mu_bound_for(0.5, 3) == pytest.approx(math.sqrt(2))
        assert mu_bound_for(0.17, 3) == pytest.approx(1.462, abs=1e-3)

    def test_flags_on_b2(self, b2):
        # lambda(B2) = 3, so no epsilon > 0 holds and nothing can be violated
        lambda_ok, _, violated = gap_flags(b2, 0.1)
        assert not lambda_ok
        assert not violated

    def test_needs_two_vertices(self):
        with pytest.raises(InvalidInputError):
            spectral_gap_survey(2, 1, 1, 0.1, RngStream(1).generator())
