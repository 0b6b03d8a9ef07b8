import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ordered_yao.constructions import random_points
from ordered_yao.geometry import (
    EPS_ANGLE,
    GeometryError,
    Point,
    PointSet,
    SectorParams,
    dual_sector_index,
    frame_x_prime,
    is_general_position,
    pair_ticks,
    perturb,
    rotate,
    sector_index,
    sector_matrix,
    x_prime,
)

O = Point(0.0, 0.0)
coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


def _off_boundary(p, q, params, margin=1e-6):
    t = ((math.atan2(q.y - p.y, q.x - p.x) - params.rotation) % (2 * math.pi)) / params.width
    return min(t - math.floor(t), math.ceil(t) - t) > margin


@pytest.mark.parametrize("k, target, expected", [
    (4, (1, 1), 0),
    (3, (1, 0), 0),
    (3, (-1, 0), 1),
])
def test_sector_index_examples(k, target, expected):
    assert sector_index(O, Point(*target), SectorParams(k)) == expected


def test_boundary_ray_belongs_to_its_sector():
    for k in range(1, 13):
        params = SectorParams(k)
        for i in range(k):
            a = 2 * math.pi * i / k
            assert sector_index(O, Point(math.cos(a), math.sin(a)), params) == i


def test_sector_index_rejects_coincident_points():
    with pytest.raises(GeometryError, match="degenerate pair"):
        sector_index(O, O, SectorParams(4))


@pytest.mark.parametrize("k, origin, target, expected", [
    (3, (1, 1), (0, 0), 0),
    (4, (0, 0), (0, -1), 1),
    (2, (0, 0), (3, -0.1), 0),
])
def test_dual_sector_examples(k, origin, target, expected):
    assert dual_sector_index(Point(*origin), Point(*target), SectorParams(k)) == expected


@pytest.mark.parametrize("k, p, expected", [
    (4, (7, -3), 7),
    (3, (1, math.sqrt(3)), 2),
    (8, (-2, 5), -2),
])
def test_x_prime_examples(k, p, expected):
    assert x_prime(Point(*p), SectorParams(k)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2])
def test_x_prime_undefined_for_small_k(k):
    with pytest.raises(GeometryError):
        x_prime(Point(1, 1), SectorParams(k))


def test_rotation_is_normalised():
    p = SectorParams(4, 2 * math.pi + 0.1)
    assert p.rotation == pytest.approx(0.1)
    assert SectorParams(4, -0.1).rotation == pytest.approx(math.pi / 2 - 0.1)


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_bad_k_rejected(bad):
    with pytest.raises(GeometryError):
        SectorParams(bad)


def test_duplicate_points_rejected():
    with pytest.raises(GeometryError):
        PointSet.from_coords([(0, 0), (0, 0)], 3)


def test_validator_single_point_ok():
    assert is_general_position(PointSet.from_coords([(0, 0)], 3)).ok


def test_validator_flags_boundary_pair():
    rep = is_general_position(PointSet.from_coords([(0, 0), (1, 0)], 3))
    assert not rep.ok
    assert ("on-sector-boundary", (0, 1)) in rep.violations


def test_validator_equal_distance_different_sectors():
    ps = PointSet.from_coords([(0, 0), (1, 1), (-1, 1)], 4)
    rep = is_general_position(ps)
    # equal distances from the origin are fine across sectors; the outer pair is
    # horizontal (on ray 2) and shares a y value
    assert "equidistant-same-sector" not in rep.kinds()
    assert sorted(rep.violations) == [("duplicate-y", (1, 2)),
                                      ("on-sector-boundary", (1, 2)),
                                      ("on-sector-boundary", (2, 1))]
    tilted = PointSet.from_coords([(0, 0), (1, 1.1), (-1.1, 1)], 4)
    assert is_general_position(tilted).ok


def test_validator_flags_equidistant_same_sector():
    ps = PointSet.from_coords([(0, 0), (1, 0.3), (0.3, 1)], 4)
    rep = is_general_position(ps, check_projections=False)
    assert rep.kinds() == {"equidistant-same-sector"}
    assert ("equidistant-same-sector", (0, 1, 2)) in rep.violations or \
           ("equidistant-same-sector", (0, 2, 1)) in rep.violations


def test_validator_all_triples_rejects_isosceles():
    ps = PointSet.from_coords([(0, 0), (1, 0.5), (-0.5, 1)], 4)
    assert is_general_position(ps).ok
    rep = is_general_position(ps, all_triples=True)
    assert rep.kinds() == {"equidistant-same-sector"}


def test_validator_near_boundary_within_tolerance():
    ps = PointSet.from_coords([(0, 0), (1, EPS_ANGLE / 10)], 3)
    assert "on-sector-boundary" in is_general_position(ps).kinds()


def test_summary_text():
    rep = is_general_position(PointSet.from_coords([(0, 0), (1, 0)], 3))
    assert "on-sector-boundary" in rep.summary()
    assert is_general_position(PointSet.from_coords([(0, 0)], 3)).summary() == "general position: ok"


def test_perturb_keeps_valid_set_close():
    ps = random_points(12, 5, seed=3)
    out = perturb(ps, 1e-9, seed=0)
    assert np.abs(out.coords() - ps.coords()).max() <= 1e-9
    assert is_general_position(out).ok


def test_perturb_fixes_boundary_pair():
    ps = PointSet.from_coords([(0, 0), (1, 0)], 3)
    out = perturb(ps, 1e-3, seed=1)
    rep = is_general_position(out)
    assert rep.ok and "on-sector-boundary" not in rep.kinds()


def test_perturb_is_deterministic():
    ps = PointSet.from_coords([(0, 0), (1, 0), (2, 0)], 4)
    a, b = perturb(ps, 1e-3, seed=9), perturb(ps, 1e-3, seed=9)
    assert np.array_equal(a.coords(), b.coords())


def test_perturb_rejects_zero_magnitude():
    with pytest.raises(GeometryError):
        perturb(PointSet.from_coords([(0, 0)], 3), 0.0, seed=0)


def test_perturb_reports_failure():
    ps = PointSet.from_coords([(0, 0), (1, 0)], 3)
    with pytest.raises(GeometryError, match="perturbation failed"):
        perturb(ps, 1e-15, seed=0, attempts=3)


def test_rotate_examples():
    ps = PointSet.from_coords([(1, 0)], 4)
    assert np.array_equal(rotate(ps, 0.0).coords(), ps.coords())
    assert rotate(ps, math.pi / 2).coords()[0] == pytest.approx([0, 1], abs=1e-12)


@given(st.floats(-10, 10), st.floats(-10, 10), st.integers(0, 1000))
def test_rotate_composes(a, b, seed):
    ps = random_points(6, 4, seed=seed)
    lhs = rotate(rotate(ps, a), b).coords()
    rhs = rotate(ps, a + b).coords()
    assert np.abs(lhs - rhs).max() <= 1e-9


@given(coord, coord, coord, coord, st.integers(1, 16), st.floats(0, 2 * math.pi))
def test_sector_dual_duality(x1, y1, x2, y2, k, rot):
    p, q = Point(x1, y1), Point(x2, y2)
    assume(math.hypot(x2 - x1, y2 - y1) > 1e-6)
    params = SectorParams(k, rot)
    assume(_off_boundary(p, q, params))
    assert sector_index(p, q, params) == dual_sector_index(q, p, params)


@given(st.integers(0, 10_000), st.integers(1, 12), st.floats(-math.pi, math.pi))
def test_rotation_equivariance(seed, k, angle):
    ps = random_points(8, k, seed=seed)
    before = sector_matrix(ps.coords(), ps.params)
    rot = rotate(ps, angle)
    params = SectorParams(k, ps.params.rotation + angle)
    t = pair_ticks(rot.coords(), params)
    frac = np.nan_to_num(t - np.floor(t), nan=0.5)
    assume(np.minimum(frac, 1 - frac).min() > 1e-6)
    # rotation is stored modulo one sector width, so labels shift by the whole widths dropped
    shift = round((angle - params.rotation) / params.width)
    after = sector_matrix(rot.coords(), params)
    off = ~np.eye(len(ps), dtype=bool)
    assert np.array_equal(after[off], (before[off] + shift) % k)


@given(coord, coord, st.floats(-50, 50), st.integers(3, 16))
def test_x_prime_constant_along_projection_ray(x, y, a, k):
    params = SectorParams(k)
    theta = 2 * math.pi * (-(-k // 4)) / k
    p = Point(x, y)
    q = Point(x + a * math.cos(theta), y + a * math.sin(theta))
    assert x_prime(q, params) == pytest.approx(x_prime(p, params), abs=1e-7)


@given(st.integers(0, 10_000), st.integers(3, 12), st.floats(0, 1))
def test_frame_x_prime_matches_scalar_without_rotation(seed, k, frac):
    ps = random_points(5, k, seed=seed)
    vec = frame_x_prime(ps)
    assert vec == pytest.approx([x_prime(p, ps.params) for p in ps], abs=1e-9)


def test_sector_matrix_matches_scalar():
    ps = random_points(15, 7, seed=2, rotation=0.3)
    sec = sector_matrix(ps.coords(), ps.params)
    for u in range(len(ps)):
        for v in range(len(ps)):
            if u != v:
                assert sec[u, v] == sector_index(ps[u], ps[v], ps.params)
