import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordered_yao.constructions import random_points
from ordered_yao.geometry import PointSet, rotate
from ordered_yao.reference import naive_edges
from ordered_yao.yao import (
    GraphError,
    OrderedYaoGraph,
    Ordering,
    PairTable,
    build_ordered,
    build_unordered,
    clique_number,
    is_acyclic,
    stats,
)

perm_seed = st.integers(0, 2**31 - 1)


def _random_order(n, seed):
    import numpy as np
    return [int(i) for i in np.random.default_rng(seed).permutation(n)]


def test_k2_hand_example():
    ps = PointSet.from_coords([(0, 0), (1, 2), (2, 1)], 2)
    g = build_ordered(ps, [0, 1, 2])
    assert {(u, v) for u, v, _ in g.edges()} == {(1, 0), (2, 0), (2, 1)}
    st_ = stats(g)
    assert (st_.edges, st_.max_indegree, st_.clique_number) == (3, 2, 3)
    assert st_.acyclic


def test_single_point():
    ps = PointSet.from_coords([(0, 0)], 5)
    g = build_ordered(ps, [0])
    s = stats(g)
    assert (s.edges, s.max_indegree, s.clique_number, s.acyclic) == (0, 0, 1, True)
    assert build_unordered(ps).edges() == []


def test_empty_set():
    ps = PointSet.from_coords([], 3)
    g = build_ordered(ps, [])
    assert stats(g).edges == 0 and clique_number(g) == 0


def test_unordered_two_points_k2():
    ps = PointSet.from_coords([(0, 0), (1, 0.5)], 2)
    g = build_unordered(ps)
    assert {(u, v) for u, v, _ in g.edges()} == {(0, 1), (1, 0)}
    assert not g.ordered and g.ordering is None


def test_unordered_tilted_square_k4():
    sq = PointSet.from_coords([(0, 0), (1, 0), (0, 1), (1, 1)], 4)
    g = build_unordered(rotate(sq, 0.1))
    assert [len(o) for o in g.out_edges] == [2, 2, 2, 2]


@pytest.mark.parametrize("seed", range(5))
def test_k1_has_n_minus_1_edges(seed):
    ps = random_points(10, 1, seed=seed)
    g = build_ordered(ps, _random_order(10, seed))
    s = stats(g)
    assert s.edges == 9 and s.acyclic


def test_ordering_validation():
    with pytest.raises(GraphError):
        Ordering((0, 0, 1))
    ps = random_points(4, 3, seed=0)
    with pytest.raises(GraphError):
        build_ordered(ps, [0, 1, 2])


def test_graph_rejects_forward_edges():
    with pytest.raises(GraphError):
        OrderedYaoGraph(2, 2, (((1, 0),), ()), (0, 1))
    with pytest.raises(GraphError):
        OrderedYaoGraph(3, 2, ((), ((0, 0),), ((0, 1), (1, 1))), (0, 1, 2))


def test_clique_examples():
    tri = OrderedYaoGraph(3, 3, ((), ((0, 0),), ((0, 0), (1, 1))), (0, 1, 2))
    assert clique_number(tri) == 3
    star = OrderedYaoGraph(4, 3, ((), ((0, 0),), ((0, 0),), ((0, 1),)), (0, 1, 2, 3))
    assert clique_number(star) == 2
    cyc = OrderedYaoGraph(3, 2, (((1, 0),), ((2, 0),), ((0, 0),)), (-1, -1, -1))
    assert not is_acyclic(cyc) and clique_number(cyc) == 3


def test_clique_search_refuses_huge_k():
    ps = random_points(4, 25, seed=0)
    with pytest.raises(GraphError):
        clique_number(build_ordered(ps, range(4)))


def test_json_round_trip():
    ps = random_points(12, 5, seed=4)
    g = build_ordered(ps, _random_order(12, 4))
    h = OrderedYaoGraph.from_json(g.to_json())
    assert h.edge_set() == g.edge_set() and h.order_position == g.order_position
    u = build_unordered(ps)
    assert OrderedYaoGraph.from_json(u.to_json()).edge_set() == u.edge_set()


def test_dot_lists_every_edge_with_sector():
    ps = random_points(6, 4, seed=1)
    g = build_ordered(ps, range(6))
    dot = g.to_dot(ps)
    assert dot.startswith("digraph")
    for u, v, s in g.edges():
        assert f'{u} -> {v} [label="{s}"]' in dot


@given(perm_seed, st.integers(1, 12), st.integers(2, 14))
def test_structural_invariants(seed, k, n):
    ps = random_points(n, k, seed=seed % 10_000)
    g = build_ordered(ps, _random_order(n, seed))
    pos = g.order_position
    for u, out in enumerate(g.out_edges):
        assert len({s for _, s in out}) == len(out) <= k
        assert all(pos[v] < pos[u] for v, _ in out)
    s = stats(g)
    assert s.acyclic
    assert s.clique_number <= 1 + s.max_outdegree
    assert s.edges == sum(s.indeg) == sum(s.outdeg)
    if k == 1:
        assert s.edges == n - 1


@given(perm_seed, st.integers(1, 9), st.integers(1, 7))
def test_matches_naive_builder(seed, k, n):
    ps = random_points(n, k, seed=seed % 10_000)
    perm = _random_order(n, seed)
    assert build_ordered(ps, perm).edge_set() == naive_edges(ps, perm)


def test_pair_table_shared_across_orders():
    ps = random_points(9, 6, seed=8)
    table = PairTable(ps)
    for seed in range(5):
        perm = _random_order(9, seed)
        assert build_ordered(ps, perm, table).edge_set() == build_ordered(ps, perm).edge_set()
    with pytest.raises(GraphError):
        build_ordered(random_points(8, 6, seed=0), range(8), table)


def test_tie_break_prefers_clockwise_candidate():
    # two equidistant candidates in sector 0 of the origin
    a = (math.cos(0.2), math.sin(0.2))
    b = (math.cos(0.9), math.sin(0.9))
    ps = PointSet.from_coords([a, b, (0, 0)], 4)
    g = build_ordered(ps, [0, 1, 2])
    assert (2, 0, 0) in g.edge_set() and (2, 1, 0) not in g.edge_set()
