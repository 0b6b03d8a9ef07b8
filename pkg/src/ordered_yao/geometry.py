"""Planar predicates for k-sector cones.

Sectors of a point are the half-open cones ``[2*pi*i/k, 2*pi*(i+1)/k)`` measured
counterclockwise from the horizontal ray pointing right, after subtracting the
global rotation of the frame. A direction lying exactly on ray ``i`` belongs to
sector ``i``.

Scalar functions use :mod:`math`; the ``*_matrix`` helpers are the vectorised
equivalents used by the graph builders and the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

EPS_ANGLE = 1e-9
EPS_DIST_REL = 1e-9

# directions within this many sector-widths of a ray are snapped onto the ray
_SNAP = 1e-12

PERTURB_ATTEMPTS = 64


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinate ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class SectorParams:
    k: int
    rotation: float = 0.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise GeometryError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        if not math.isfinite(self.rotation):
            raise GeometryError("rotation must be finite")
        width = TWO_PI / self.k
        rot = math.fmod(self.rotation, width)
        if rot < 0:
            rot += width
        if rot >= width:
            rot = 0.0
        object.__setattr__(self, "rotation", rot)

    @property
    def width(self) -> float:
        return TWO_PI / self.k


@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]
    params: SectorParams
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise GeometryError("point set contains duplicate points")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]], k: int,
                    rotation: float = 0.0, **meta) -> "PointSet":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords),
                   SectorParams(k, rotation), dict(meta))

    @property
    def k(self) -> int:
        return self.params.k

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def coords(self) -> np.ndarray:
        """Return an ``(n, 2)`` float array of the coordinates."""
        if not self.points:
            return np.zeros((0, 2))
        return np.array([(p.x, p.y) for p in self.points], dtype=float)

    def with_coords(self, xy: np.ndarray) -> "PointSet":
        return PointSet(tuple(Point(float(x), float(y)) for x, y in xy),
                        self.params, dict(self.meta))

    @cached_property
    def _diameter(self) -> float:
        xy = self.coords()
        if len(xy) < 2:
            return 0.0
        d = xy[:, None, :] - xy[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def diameter(self) -> float:
        return self._diameter

    def eps_dist(self) -> float:
        return EPS_DIST_REL * (1.0 + self.diameter())


@dataclass
class GeneralPositionReport:
    ok: bool
    violations: list[tuple[str, tuple[int, ...]]]

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {kind for kind, _ in self.violations}

    def summary(self, limit: int = 10) -> str:
        if self.ok:
            return "general position: ok"
        lines = [f"general position violated ({len(self.violations)} issues)"]
        for kind, idx in self.violations[:limit]:
            lines.append(f"  {kind}: {list(idx)}")
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


def _direction_ticks(theta: float, params: SectorParams) -> float:
    """Angle relative to ray 0 in units of sector widths, in ``[0, k)``."""
    t = ((theta - params.rotation) % TWO_PI) / params.width
    r = round(t)
    if abs(t - r) <= _SNAP * max(1, params.k):
        t = float(r)
    if t >= params.k:
        t -= params.k
    return t


def sector_index(origin: Point, target: Point, params: SectorParams) -> int:
    dx = target.x - origin.x
    dy = target.y - origin.y
    if dx == 0.0 and dy == 0.0:
        raise GeometryError("degenerate pair")
    return int(math.floor(_direction_ticks(math.atan2(dy, dx), params))) % params.k


def sector_offset(origin: Point, target: Point, params: SectorParams) -> float:
    """Angle between the sector's clockwise boundary ray and the direction to `target`."""
    dx = target.x - origin.x
    dy = target.y - origin.y
    if dx == 0.0 and dy == 0.0:
        raise GeometryError("degenerate pair")
    t = _direction_ticks(math.atan2(dy, dx), params)
    return (t - math.floor(t)) * params.width


def dual_sector_index(origin: Point, target: Point, params: SectorParams) -> int:
    mirrored = Point(2.0 * origin.x - target.x, 2.0 * origin.y - target.y)
    return sector_index(origin, mirrored, params)


def ray_angle(i: int, params: SectorParams) -> float:
    return i * params.width + params.rotation


def x_prime(p: Point, params: SectorParams) -> float:
    """Where the line through `p` parallel to ray ``ceil(k/4)`` meets the x-axis."""
    if params.k <= 2:
        raise GeometryError("projection undefined for k <= 2")
    theta = ray_angle(-(-params.k // 4), params)
    s = math.sin(theta)
    if abs(s) < 1e-15:
        raise GeometryError("projection undefined")
    return p.x - p.y * math.cos(theta) / s


def rotate(ps: PointSet, angle: float) -> PointSet:
    c, s = math.cos(angle), math.sin(angle)
    xy = ps.coords()
    if len(xy) == 0:
        return ps
    out = np.column_stack([c * xy[:, 0] - s * xy[:, 1], s * xy[:, 0] + c * xy[:, 1]])
    return ps.with_coords(out)


def frame_coords(ps: PointSet) -> np.ndarray:
    """Coordinates in the frame where ray 0 points along +x."""
    xy = ps.coords()
    rot = ps.params.rotation
    if rot == 0.0 or len(xy) == 0:
        return xy
    c, s = math.cos(-rot), math.sin(-rot)
    return np.column_stack([c * xy[:, 0] - s * xy[:, 1], s * xy[:, 0] + c * xy[:, 1]])


def frame_x_prime(ps: PointSet) -> np.ndarray:
    """x' of every point computed in the sector frame (rotation removed)."""
    k = ps.k
    if k <= 2:
        raise GeometryError("projection undefined for k <= 2")
    fxy = frame_coords(ps)
    theta = TWO_PI * (-(-k // 4)) / k
    return fxy[:, 0] - fxy[:, 1] * math.cos(theta) / math.sin(theta)


# -- vectorised pair tables -------------------------------------------------

def pair_ticks(xy: np.ndarray, params: SectorParams) -> np.ndarray:
    """``ticks[u, v]``: direction u->v in sector widths, in ``[0, k)``; NaN on the diagonal."""
    d = xy[None, :, :] - xy[:, None, :]
    theta = np.arctan2(d[..., 1], d[..., 0])
    t = np.mod(theta - params.rotation, TWO_PI) / params.width
    r = np.round(t)
    t = np.where(np.abs(t - r) <= _SNAP * max(1, params.k), r, t)
    t = np.where(t >= params.k, t - params.k, t)
    np.fill_diagonal(t, np.nan)
    return t


def sector_matrix(xy: np.ndarray, params: SectorParams) -> np.ndarray:
    """``S[u, v]`` = sector of u containing v; -1 on the diagonal."""
    t = pair_ticks(xy, params)
    s = np.floor(np.nan_to_num(t, nan=-1.0)).astype(np.int64) % params.k
    np.fill_diagonal(s, -1)
    return s


def distance_matrix(xy: np.ndarray) -> np.ndarray:
    d = xy[None, :, :] - xy[:, None, :]
    return np.hypot(d[..., 0], d[..., 1])


# -- general position -------------------------------------------------------

def is_general_position(ps: PointSet, check_projections: bool = True,
                        all_triples: bool = False) -> GeneralPositionReport:
    """Validate `ps` against the tie conditions of the sector model.

    Reports ordered pairs whose direction is within ``EPS_ANGLE`` of a sector
    boundary, triples ``(p; q, r)`` with ``q, r`` in a common sector of ``p`` at
    equal distance, and duplicate ``y`` / ``x'`` values (frame coordinates).
    With ``all_triples`` the equal-distance test ignores sectors, which rejects
    every isosceles triangle.
    """
    n = len(ps)
    violations: list[tuple[str, tuple[int, ...]]] = []
    if n < 2:
        return GeneralPositionReport(True, violations)
    params = ps.params
    xy = ps.coords()
    eps_d = ps.eps_dist()

    t = pair_ticks(xy, params)
    frac = np.nan_to_num(t - np.floor(t), nan=0.5)
    near = np.minimum(frac, 1.0 - frac) * params.width <= EPS_ANGLE
    np.fill_diagonal(near, False)
    for u, v in zip(*np.nonzero(near)):
        violations.append(("on-sector-boundary", (int(u), int(v))))

    sec = sector_matrix(xy, params)
    dist = distance_matrix(xy)
    diag = np.eye(n, dtype=bool)
    group = np.zeros((n, n), dtype=np.int64) if all_triples else sec.copy()
    group[diag] = params.k
    d_key = np.where(diag, np.inf, dist)
    order = np.lexsort((d_key, group), axis=1)
    g = np.take_along_axis(group, order, axis=1)
    dd = np.take_along_axis(d_key, order, axis=1)
    close = (g[:, 1:] == g[:, :-1]) & (g[:, 1:] < params.k) & (dd[:, 1:] - dd[:, :-1] <= eps_d)
    for u, j in zip(*np.nonzero(close)):
        violations.append(("equidistant-same-sector",
                           (int(u), int(order[u, j]), int(order[u, j + 1]))))

    if check_projections:
        fxy = frame_coords(ps)
        keys = [("duplicate-y", fxy[:, 1])]
        if params.k >= 3:
            keys.append(("duplicate-x-prime", frame_x_prime(ps)))
        for kind, vals in keys:
            order = np.argsort(vals, kind="stable")
            sv = vals[order]
            for j in np.nonzero(np.diff(sv) <= eps_d)[0]:
                violations.append((kind, (int(order[j]), int(order[j + 1]))))

    return GeneralPositionReport(not violations, violations)


def perturb(ps: PointSet, magnitude: float, seed: int,
            attempts: int = PERTURB_ATTEMPTS, **check) -> PointSet:
    """Jitter every point uniformly inside a disc of radius `magnitude`.

    Whole-set redraws (same generator, fresh draws) until the result is in
    general position. Extra keyword arguments go to :func:`is_general_position`.
    """
    if not magnitude > 0:
        raise GeometryError("perturbation magnitude must be positive")
    rng = np.random.default_rng(seed)
    xy = ps.coords()
    n = len(xy)
    for _ in range(attempts):
        r = magnitude * np.sqrt(rng.random(n))
        a = rng.random(n) * TWO_PI
        cand = xy + np.column_stack([r * np.cos(a), r * np.sin(a)])
        try:
            out = ps.with_coords(cand)
        except GeometryError:
            continue
        if is_general_position(out, **check).ok:
            return out
    raise GeometryError("perturbation failed")
