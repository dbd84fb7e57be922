import math
from fractions import Fraction

import pytest

from regular_loops.errors import InvalidInputError, OddHalfEdges
from regular_loops.graphs import enumerate_all_pairings
from regular_loops.loops import count_simple_loops
from regular_loops.theory import (
    asymptotic_count,
    exact_expected_simple,
    exact_simple_closed_prob,
    exact_simple_walk_prob,
    expected_simple_paths,
    predicted_ratio,
    primitive_upper_bound,
)


class TestClosedProbability:
    def test_small_values(self):
        assert exact_simple_closed_prob(3, 2, 1).value == Fraction(2, 5)
        assert exact_simple_closed_prob(3, 4, 2).value == Fraction(2, 11)

    def test_longer_than_n_is_flagged(self):
        result = exact_simple_closed_prob(3, 4, 5)
        assert result.value == 0
        assert result.length_out_of_range

    def test_float_conversion(self):
        assert float(exact_simple_closed_prob(3, 4, 2)) == pytest.approx(2 / 11)

    def test_bad_input(self):
        with pytest.raises(OddHalfEdges):
            exact_simple_closed_prob(3, 3, 1)
        with pytest.raises(InvalidInputError):
            exact_simple_closed_prob(3, 4, 0)

    def test_self_avoiding_prefix_is_non_increasing(self):
        for d, n in [(3, 10), (4, 12), (5, 20)]:
            probs = [exact_simple_walk_prob(d, n, k) for k in range(1, n)]
            assert all(b <= a for a, b in zip(probs, probs[1:]))
            assert probs[0] == 1 - Fraction(d - 1, d * n - 1)


class TestExpectedSimple:
    def test_self_loops_on_two_vertices(self):
        assert exact_expected_simple(3, 2, 1) == Fraction(12, 5)

    def test_zero_beyond_n(self):
        assert exact_expected_simple(3, 2, 3) == 0

    def test_matches_exhaustive_average_on_two_vertices(self):
        graphs = list(enumerate_all_pairings(3, 2))
        assert len(graphs) == 15
        for k in (1, 2):
            total = sum(count_simple_loops(g, k) for g in graphs)
            assert Fraction(total, len(graphs)) == exact_expected_simple(3, 2, k)

    def test_expected_paths_of_length_one(self):
        # a step of length one fails to be self-avoiding only on a self-loop
        assert expected_simple_paths(3, 2, 1) == 6 * (1 - Fraction(2, 5))

    @pytest.mark.parametrize("k", [1, 2, 3, 5, 10])
    def test_asymptote(self, k):
        n = 100 * k * k
        ratio = k * exact_expected_simple(3, n, k) / Fraction(2**k)
        assert abs(float(ratio) - 1) < 0.02

    @pytest.mark.parametrize("d,n", [(3, 100), (3, 400), (3, 2500), (4, 400)])
    def test_upper_bound_regime(self, d, n):
        ceiling = math.exp(-2 * (d - 2) / d) * 1.1
        start = math.ceil(2 * math.sqrt(n))
        for k in range(start, min(n, 3 * start) + 1, max(1, start // 4)):
            assert predicted_ratio(d, n, k) <= ceiling


class TestAsymptoticAndBounds:
    def test_asymptotic_count(self):
        assert asymptotic_count(3, 5) == Fraction(32, 5)
        assert asymptotic_count(3, 1) == 2
        assert asymptotic_count(4, 3) == 9
        with pytest.raises(InvalidInputError):
            asymptotic_count(1, 3)

    def test_primitive_upper_bound(self):
        assert primitive_upper_bound(3, 4, 3) == 108
        assert primitive_upper_bound(3, 2, 2) == 18
        assert primitive_upper_bound(5, 7, 1) == 35

    def test_predicted_ratio(self):
        assert predicted_ratio(3, 400, 5) >= 0.98
        assert predicted_ratio(3, 400, 80) <= 0.10
        assert predicted_ratio(3, 10, 1) == pytest.approx(30 / 29)
        with pytest.raises(InvalidInputError):
            predicted_ratio(3, 10, 11)
