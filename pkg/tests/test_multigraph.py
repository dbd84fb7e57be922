import json

import networkx as nx
import numpy as np
import pytest

from regular_loops.errors import (
    FixedPoint,
    IndexOutOfRange,
    InvalidInputError,
    NotInvolution,
    OddHalfEdges,
)
from regular_loops.graphs import (
    adjacency_matrix,
    from_pairing,
    is_simple,
    load_graph,
    save_graph,
    structure_flags,
    vertex_of,
)


class TestFromPairing:
    def test_k4_is_simple(self, k4):
        assert k4.d == 3 and k4.n == 4
        assert k4.half_edges == 12
        assert k4.edge_count == 6
        assert is_simple(k4)

    def test_b2_has_multi_edges(self, b2):
        assert structure_flags(b2) == (False, True)

    def test_self_loop_flags(self, self_loop):
        assert structure_flags(self_loop) == (True, False)

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            from_pairing(3, 2, [3, 4, 5, 1, 0, 2])

    def test_fixed_point(self):
        with pytest.raises(FixedPoint):
            from_pairing(2, 1, [0, 1])

    def test_odd_half_edges(self):
        with pytest.raises(OddHalfEdges):
            from_pairing(3, 3, list(range(9)))

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_pairing(3, 2, [3, 4, 5, 0, 1, 9])

    def test_wrong_length(self):
        with pytest.raises(InvalidInputError):
            from_pairing(3, 2, [1, 0])

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            from_pairing(2, 1, [0, 1])


class TestAccessors:
    def test_vertex_of(self, k4):
        assert vertex_of(k4, 0) == 0
        assert vertex_of(k4, 11) == 3
        with pytest.raises(IndexOutOfRange):
            vertex_of(k4, 12)

    def test_head_and_reverse(self, k4):
        assert k4.head(0) == 1
        assert k4.reverse(0) == 3
        assert k4.head(k4.reverse(0)) == 0

    def test_edges_listed_once(self, k4):
        edges = k4.edges()
        assert len(edges) == 6
        assert all(h < p for h, p in edges)

    def test_to_networkx(self, k4, b2):
        assert nx.is_isomorphic(nx.Graph(k4.to_networkx()), nx.complete_graph(4))
        assert b2.to_networkx().number_of_edges(0, 1) == 3


class TestAdjacency:
    def test_k4(self, k4):
        expected = np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64)
        assert np.array_equal(adjacency_matrix(k4), expected)

    def test_b2(self, b2):
        assert adjacency_matrix(b2).tolist() == [[0, 3], [3, 0]]

    def test_self_loop_counts_twice(self, self_loop):
        assert adjacency_matrix(self_loop).tolist() == [[2]]

    def test_row_sums_equal_degree(self, prism):
        assert adjacency_matrix(prism).sum(axis=1).tolist() == [3] * 6


class TestGraphFiles:
    def test_round_trip(self, tmp_path, k4):
        path = save_graph(k4, tmp_path / "k4.json")
        assert load_graph(path) == k4

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"d": 3, "n": 2}))
        with pytest.raises(InvalidInputError):
            load_graph(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InvalidInputError):
            load_graph(path)

    def test_non_integer_entries(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"d": 2, "n": 1, "pairing": [1.5, 0]}))
        with pytest.raises(InvalidInputError):
            load_graph(path)
