from collections import Counter

import networkx as nx
import numpy as np
import pytest

from regular_loops.config import Budgets
from regular_loops.errors import BudgetExceeded, InvalidConfig, OddHalfEdges, RejectionBudgetExhausted
from regular_loops.graphs import (
    GraphModel,
    GraphModelFactory,
    LazyConfiguration,
    RngStream,
    cell_stream_index,
    count_pairings,
    enumerate_all_pairings,
    is_simple,
    mix64,
    sample_configuration,
    sample_lazy_nb_walk,
    sample_uniform_simple,
)


class TestRngStream:
    def test_same_stream_same_draws(self):
        a = RngStream(42, 7).generator().integers(0, 1000, size=10)
        b = RngStream(42, 7).generator().integers(0, 1000, size=10)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        assert RngStream(42, 0).mixed_seed != RngStream(42, 1).mixed_seed
        assert mix64(1, 0) != mix64(2, 0)

    def test_cell_stream_index(self):
        assert cell_stream_index(0, 5) == 5
        assert cell_stream_index(1, 0) == 1 << 32
        assert cell_stream_index(2, 3) == (2 << 32) | 3

    def test_negative_stream_rejected(self):
        with pytest.raises(ValueError):
            RngStream(1, -1)


class TestConfigurationModel:
    def test_count_pairings(self):
        assert count_pairings(3, 2) == 15
        assert count_pairings(3, 4) == 10395
        assert count_pairings(2, 1) == 1

    def test_odd_rejected(self):
        with pytest.raises(OddHalfEdges):
            sample_configuration(3, 5, RngStream(0))

    def test_sample_is_valid(self):
        g = sample_configuration(4, 25, RngStream(3))
        assert g.half_edges == 100
        assert all(g.pairing[g.pairing[h]] == h and g.pairing[h] != h for h in range(100))

    def test_deterministic(self):
        assert sample_configuration(3, 20, RngStream(9, 4)) == sample_configuration(3, 20, RngStream(9, 4))

    def test_roughly_uniform_over_pairings(self):
        gen = RngStream(11).generator()
        counts = Counter(sample_configuration(3, 2, gen).pairing for _ in range(3000))
        assert len(counts) == 15
        assert all(140 <= c <= 260 for c in counts.values())


class TestEnumeration:
    def test_enumerates_every_pairing_once(self):
        graphs = list(enumerate_all_pairings(3, 2))
        assert len(graphs) == 15
        assert len({g.pairing for g in graphs}) == 15

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_all_pairings(3, 4, budget=100))


class TestUniformSimple:
    def test_only_simple_graphs(self):
        gen = RngStream(5).generator()
        for _ in range(20):
            assert is_simple(sample_uniform_simple(3, 8, gen))

    def test_four_vertices_give_k4(self):
        g = sample_uniform_simple(3, 4, RngStream(5))
        assert is_simple(g)
        assert nx.is_isomorphic(nx.Graph(g.to_networkx()), nx.complete_graph(4))

    def test_rejection_budget(self):
        # d = 3, n = 2 has no simple graph at all
        with pytest.raises(RejectionBudgetExhausted):
            sample_uniform_simple(3, 2, RngStream(0), max_attempts=5)


class TestFactory:
    def test_parse(self):
        assert GraphModel.parse("uniform_simple") is GraphModel.UNIFORM_SIMPLE
        assert GraphModel.parse("Configuration") is GraphModel.CONFIGURATION
        with pytest.raises(InvalidConfig):
            GraphModel.parse("erdos-renyi")

    def test_configuration_sampler(self):
        sampler = GraphModelFactory.create_sampler("configuration")
        assert sampler(3, 4, RngStream(1)) == sample_configuration(3, 4, RngStream(1))

    def test_uniform_simple_uses_rejection_budget(self):
        sampler = GraphModelFactory.create_sampler(GraphModel.UNIFORM_SIMPLE, Budgets(rejection=2))
        with pytest.raises(RejectionBudgetExhausted):
            sampler(3, 2, RngStream(0))


class TestLazyConfiguration:
    def test_partner_is_symmetric_and_stable(self):
        lazy = LazyConfiguration(3, 10, RngStream(2))
        p = lazy.partner(0)
        assert p != 0
        assert lazy.partner(p) == 0
        assert lazy.partner(0) == p
        assert lazy.revealed_pairs == 1

    def test_lazy_walk_shape(self):
        walk = sample_lazy_nb_walk(3, 50, 12, RngStream(8))
        assert walk.length == 12
        assert len(walk.vertices) == 13
        for (tail, head), vertex in zip(walk.pairs, walk.vertices[1:]):
            assert head // 3 == vertex

    def test_lazy_walk_never_backtracks(self):
        gen = RngStream(13).generator()
        for _ in range(200):
            walk = sample_lazy_nb_walk(3, 6, 8, gen)
            for (_, arrival), (tail, _) in zip(walk.pairs, walk.pairs[1:]):
                assert tail != arrival
