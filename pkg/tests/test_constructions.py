import math

import numpy as np
import pytest

from ordered_yao.constructions import (
    CONSTRUCTIONS,
    ConstructionSpec,
    collinear_generic,
    d3_hard,
    distinct_sectors,
    figure9_k3,
    generate,
    grid_hard,
    random_points,
    triangle_k3,
    wk_clique,
)
from ordered_yao.geometry import GeometryError, is_general_position
from ordered_yao.oracle import SearchSpec, search


def _angles(ps):
    return sorted(math.atan2(p.y, p.x) % (2 * math.pi) for p in ps)


@pytest.mark.parametrize("k", [2, 3, 5, 8])
def test_collinear_small_oracle(k):
    ps = collinear_generic(6, k)
    assert is_general_position(ps).ok
    assert search(ps, SearchSpec("clique", "max")).value <= 3
    assert search(ps, SearchSpec("edges", "max")).value <= 2 * 6 - 3


def test_collinear_single_point():
    assert len(collinear_generic(1, 4)) == 1


def test_triangle_every_ordering_two_edges():
    ps = triangle_k3()
    assert search(ps, SearchSpec("edges", "max")).value == 2
    assert search(ps, SearchSpec("edges", "min")).value == 2
    assert search(ps, SearchSpec("clique", "max")).value == 2


@pytest.mark.parametrize("n", [4, 6])
def test_figure9_edge_max(n):
    ps = figure9_k3(n)
    assert len(ps) == n and is_general_position(ps).ok
    assert search(ps, SearchSpec("edges", "max")).value == 2 * n - 4


def test_d3_hard_max_indegree():
    ps = d3_hard(1)
    assert len(ps) == 6
    assert search(ps, SearchSpec("max_indegree", "max")).value == 4


def test_d3_hard_near_unit_circle():
    ps = d3_hard(2)
    assert len(ps) == 12
    assert np.allclose(np.hypot(*ps.coords().T), 1.0, atol=1e-3)


def test_wk_clique_small_cases():
    phi = 0.01
    ps = wk_clique(4, phi)
    assert _angles(ps) == pytest.approx([phi, math.pi + phi])
    ps = wk_clique(5, phi)
    assert _angles(ps) == pytest.approx([math.pi / 5 + phi, math.pi + phi, 8 * math.pi / 5 + phi])


@pytest.mark.parametrize("k", range(4, 13))
def test_wk_clique_is_always_complete(k):
    ps = wk_clique(k)
    m = len(ps)
    assert m == math.ceil(k / 2)
    assert distinct_sectors(ps)
    assert search(ps, SearchSpec("clique", "min")).value == m


def test_grid_small():
    ps = grid_hard(4, 4)
    assert len(ps) == 4 and is_general_position(ps, all_triples=True).ok


def test_grid_sampled_edges_above_floor():
    from ordered_yao.acceptance import GRID_C
    ps = grid_hard(9, 4)
    low = search(ps, SearchSpec("edges", "min", "sampled", 1000, seed=0)).value
    assert low >= 9 * 2 - float(GRID_C) * 16 * 3


def test_grid_min_distance_and_diameter():
    ps = grid_hard(25, 6, seed=3)
    xy = ps.coords()
    d = np.hypot(*(xy[:, None] - xy[None]).transpose(2, 0, 1))
    np.fill_diagonal(d, np.inf)
    assert d.min() > 1
    assert ps.diameter() <= math.ceil(math.sqrt(2) * 5)


def test_generate_dispatch():
    assert set(CONSTRUCTIONS) >= {"collinear", "triangle3", "figure9", "d3-hard", "clique-set", "grid"}
    assert len(generate(ConstructionSpec("clique-set", k=7))) == 4
    assert len(generate(ConstructionSpec("d3-hard", m=2))) == 12
    assert len(generate(ConstructionSpec("random", n=5, k=3, seed=1))) == 5
    with pytest.raises(GeometryError):
        generate(ConstructionSpec("grid", k=4))
    with pytest.raises(GeometryError):
        generate(ConstructionSpec("nope"))


def test_random_points_seeded():
    a, b = random_points(10, 5, seed=3), random_points(10, 5, seed=3)
    assert np.array_equal(a.coords(), b.coords())
    assert not np.array_equal(a.coords(), random_points(10, 5, seed=4).coords())
