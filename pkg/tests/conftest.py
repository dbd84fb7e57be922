"""Shared graph fixtures"""

import pytest

from regular_loops.graphs import Multigraph, from_pairing

# Vertex v owns half-edges d*v .. d*v + d - 1.
K4_PAIRING = [3, 6, 9, 0, 7, 10, 1, 4, 11, 2, 5, 8]
B2_PAIRING = [3, 4, 5, 0, 1, 2]
SELF_LOOP_PAIRING = [1, 0]
# Triangles 0-1-2 and 3-4-5 joined by 0-3, 1-4, 2-5.
PRISM_PAIRING = [3, 6, 9, 0, 7, 12, 1, 4, 15, 2, 13, 16, 5, 10, 17, 8, 11, 14]
# 0->1->2->0, across to 3, around 3->4->5->3, back to 0.
PRISM_FIGURE_WALK = (0, 4, 6, 2, 10, 14, 16, 9)


@pytest.fixture
def k4() -> Multigraph:
    """Complete graph on 4 vertices"""
    return from_pairing(3, 4, K4_PAIRING)


@pytest.fixture
def b2() -> Multigraph:
    """Two vertices joined by three parallel edges"""
    return from_pairing(3, 2, B2_PAIRING)


@pytest.fixture
def self_loop() -> Multigraph:
    """One vertex with a single self-loop (d = 2)"""
    return from_pairing(2, 1, SELF_LOOP_PAIRING)


@pytest.fixture
def prism() -> Multigraph:
    return from_pairing(3, 6, PRISM_PAIRING)
