"""Point-set generators: random inputs and the extremal configurations.

Each generator returns a :class:`PointSet` that passes
:func:`~ordered_yao.geometry.is_general_position`; ``meta`` records the
construction name and parameters.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import (
    EPS_ANGLE,
    GeometryError,
    PointSet,
    distance_matrix,
    is_general_position,
    perturb,
    sector_matrix,
)
from .orderings import ceil_div, ceil_sqrt

RETRIES = 64


def _min_gap(xy: np.ndarray) -> float:
    d = distance_matrix(xy)
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def random_points(n: int, k: int, seed: int = 0, rotation: float = 0.0,
                  scale: float = 1.0) -> PointSet:
    """`n` uniform points in ``[0, scale]^2``, redrawn until in general position."""
    rng = np.random.default_rng(seed)
    for _ in range(RETRIES):
        xy = rng.random((n, 2)) * scale
        try:
            ps = PointSet.from_coords(xy, k, rotation, construction="random", n=n, seed=seed)
        except GeometryError:
            continue
        if is_general_position(ps).ok:
            return ps
    raise GeometryError("could not draw a point set in general position")


def collinear_generic(n: int, k: int, seed: int = 0) -> PointSet:
    """`n` points on a line through the origin at angle pi/(2k).

    The direction and its reverse both stay at least pi/(2k) away from every
    sector boundary, so each point sees all others in at most two sectors.
    """
    if n < 1 or k < 2:
        raise GeometryError("collinear construction needs n >= 1 and k >= 2")
    theta = math.pi / (2 * k)
    direction = np.array([math.cos(theta), math.sin(theta)])
    rng = np.random.default_rng(seed)
    for _ in range(RETRIES):
        t = np.arange(n) + rng.uniform(-0.25, 0.25, n)
        ps = PointSet.from_coords(t[:, None] * direction, k,
                                  construction="collinear", n=n, seed=seed)
        if is_general_position(ps).ok:
            return ps
    raise GeometryError("collinear construction failed validation")


def triangle_k3() -> PointSet:
    """Three points near rays 0, 1, 2 of the 3-sector frame around the origin.

    Radii differ by 1e-6 so no vertex sees the other two at equal distance;
    every vertex still sees both others in a single sector.
    """
    pts = []
    for i, r in enumerate((1.0, 1.0 + 1e-6, 1.0 + 2e-6)):
        a = 2.0 * math.pi * i / 3 + 2 * EPS_ANGLE
        pts.append((r * math.cos(a), r * math.sin(a)))
    ps = PointSet.from_coords(pts, 3, construction="triangle3")
    report = is_general_position(ps)
    if not report.ok:
        raise GeometryError(report.summary())
    return ps


def figure9_k3(n: int, seed: int = 0) -> PointSet:
    """A=(0,0), C=(0,1), B=(sqrt(3)/2, 1/2) and n-3 points inside segment AC."""
    if n < 4:
        raise GeometryError("figure9 construction needs n >= 4")
    rng = np.random.default_rng(seed)
    inner = n - 3
    ys = (np.arange(inner) + 0.5 + rng.uniform(-0.25, 0.25, inner)) / inner
    xy = [(0.0, 0.0), (math.sqrt(3) / 2, 0.5), (0.0, 1.0)] + [(0.0, float(y)) for y in ys]
    base = PointSet.from_coords(xy, 3, construction="figure9", n=n, seed=seed,
                                labels=["A", "B", "C"] + [f"m{i}" for i in range(inner)])
    return perturb(base, 1e-4 * _min_gap(base.coords()), seed)


def d3_hard(m: int, seed: int = 0) -> PointSet:
    """6m points on the unit circle in six clusters around the 3-sector rays."""
    if m < 1:
        raise GeometryError("d3_hard needs m >= 1")
    alpha = math.pi / (10 * m)
    third = 2 * math.pi / 3
    centers = [(0.0, 1), (0.0, -1), (third, 1), (third, -1), (2 * third, 1), (2 * third, -1)]
    xy, labels = [], []
    for name, (c, sgn) in zip("abcdef", centers):
        for i in range(1, m + 1):
            a = c + sgn * i * alpha
            xy.append((math.cos(a), math.sin(a)))
            labels.append(f"{name}{i}")
    base = PointSet.from_coords(xy, 3, construction="d3-hard", m=m, seed=seed, labels=labels)
    return perturb(base, 1e-4 * _min_gap(base.coords()), seed)


def clique_exponents(k: int) -> list[int]:
    """Powers of the primitive 2k-th root of unity used by :func:`wk_clique`."""
    if k < 2:
        raise GeometryError("clique set needs k >= 2")
    if k % 2 == 0:
        return [4 * j for j in range(k // 2)]
    m = (k - 1) // 2
    if m % 2 == 1:
        return [4 * j for j in range(m)] + [2 * k - 3]
    return [4 * j + 1 for j in range(m)] + [2 * k - 2]


def wk_clique(k: int, phi: float | None = None) -> PointSet:
    """ceil(k/2) points, each seeing all the others in pairwise distinct sectors.

    Points sit at roots of unity whose pair directions fall on sector
    boundaries or bisectors; a small rotation by `phi` pushes the boundary
    cases into sector interiors.
    """
    if phi is None:
        phi = math.pi / (64 * k)
    exps = clique_exponents(k)
    xy = [(math.cos(math.pi * e / k + phi), math.sin(math.pi * e / k + phi)) for e in exps]
    ps = PointSet.from_coords(xy, k, construction="clique-set", phi=phi)
    report = is_general_position(ps)
    if not report.ok:
        raise GeometryError(f"phi={phi} too large or too small: {report.summary()}")
    if not distinct_sectors(ps):
        raise GeometryError(f"phi={phi} breaks the distinct-sector property")
    return ps


def distinct_sectors(ps: PointSet) -> bool:
    """True when every point sees all other points in pairwise distinct sectors."""
    sec = sector_matrix(ps.coords(), ps.params)
    n = len(ps)
    return all(len({int(sec[u, v]) for v in range(n) if v != u}) == n - 1 for u in range(n))


def grid_cells(n: int) -> list[tuple[int, int]]:
    """floor(sqrt n)^2 inner cells plus the lexicographically first outer cells."""
    f, c = math.isqrt(n), ceil_sqrt(n)
    inner = [(i, j) for i in range(f) for j in range(f)]
    outer = sorted((i, j) for i in range(c) for j in range(c) if i >= f or j >= f)
    return inner + outer[: n - f * f]


def grid_hard(n: int, k: int, seed: int = 0) -> PointSet:
    """Perturbed grid with gap slightly above 1 and no isosceles triangles."""
    if n < 4 or k < 2:
        raise GeometryError("grid construction needs n >= 4 and k >= 2")
    gap = 1.0 + 1.0 / (8 * math.sqrt(n))
    cells = grid_cells(n)
    base = PointSet.from_coords([(i * gap, j * gap) for i, j in cells], k,
                                construction="grid", n=n, seed=seed)
    out = perturb(base, 1e-4 * gap, seed, all_triples=True)
    xy = out.coords()
    diam_cap = math.ceil(math.sqrt(2) * ceil_sqrt(n))
    if _min_gap(xy) <= 1.0 or out.diameter() > diam_cap:
        raise GeometryError("grid perturbation broke the spacing constraints")
    return out


@dataclass
class ConstructionSpec:
    name: str
    k: int | None = None
    n: int | None = None
    m: int | None = None
    seed: int = 0
    phi: float | None = None

    def to_dict(self) -> dict:
        return {key: v for key, v in asdict(self).items() if v is not None}


CONSTRUCTIONS = ("random", "collinear", "triangle3", "figure9", "d3-hard", "clique-set", "grid")


def generate(spec: ConstructionSpec) -> PointSet:
    name = spec.name

    def need(attr: str):
        v = getattr(spec, attr)
        if v is None:
            raise GeometryError(f"construction {name!r} needs --{attr}")
        return v

    if name == "random":
        return random_points(need("n"), need("k"), spec.seed)
    if name == "collinear":
        return collinear_generic(need("n"), need("k"), spec.seed)
    if name == "triangle3":
        return triangle_k3()
    if name == "figure9":
        return figure9_k3(need("n"), spec.seed)
    if name == "d3-hard":
        return d3_hard(need("m"), spec.seed)
    if name == "clique-set":
        return wk_clique(need("k"), spec.phi)
    if name == "grid":
        return grid_hard(need("n"), need("k"), spec.seed)
    raise GeometryError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
