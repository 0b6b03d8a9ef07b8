"""Ordering strategies, each returned with the bound it guarantees.

Every strategy returns a :class:`StrategyOutcome` whose ``bounds`` can be
replayed against the graph built from its ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .geometry import (
    GeometryError,
    PointSet,
    dual_sector_index,
    frame_coords,
    frame_x_prime,
)
from .yao import OrderedYaoGraph, Ordering, PairTable, build_ordered, clique_number


class StrategyError(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r + (r * r < n)


@dataclass(frozen=True)
class Bound:
    """An inequality on one statistic of a built graph.

    ``quantity`` is one of ``indegree`` (of ``vertices[0]``), ``outdegree``
    (maximum over ``vertices``), ``max_outdegree``, ``max_indegree``,
    ``edges``, ``clique``, or ``adjacent_pairs`` (number of adjacent pairs
    among ``vertices``; 3 for a triangle).
    """

    quantity: str
    relation: str
    value: int
    vertices: tuple[int, ...] = ()
    label: str = ""

    def measure(self, g: OrderedYaoGraph) -> int:
        q = self.quantity
        if q == "indegree":
            v = self.vertices[0]
            return sum(1 for _, t, _ in g.edges() if t == v)
        if q == "outdegree":
            return max((len(g.out_edges[v]) for v in self.vertices), default=0)
        if q == "max_outdegree":
            return max((len(o) for o in g.out_edges), default=0)
        if q == "max_indegree":
            indeg = [0] * g.n
            for _, t, _ in g.edges():
                indeg[t] += 1
            return max(indeg, default=0)
        if q == "edges":
            return sum(len(o) for o in g.out_edges)
        if q == "clique":
            return clique_number(g)
        if q == "adjacent_pairs":
            adj = g.adjacency
            return sum(1 for a, b in combinations(self.vertices, 2) if b in adj[a])
        raise ValueError(f"unknown quantity {q!r}")

    def compare(self, measured: int) -> bool:
        if self.relation == ">=":
            return measured >= self.value
        if self.relation == "<=":
            return measured <= self.value
        if self.relation == "==":
            return measured == self.value
        raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, g: OrderedYaoGraph) -> bool:
        return self.compare(self.measure(g))

    def __str__(self) -> str:
        if self.label:
            return self.label
        if self.quantity == "indegree":
            target = f"indegree({self.vertices[0]})"
        elif self.quantity == "outdegree":
            target = f"outdegree[{len(self.vertices)} vertices]"
        else:
            target = self.quantity
        return f"{target} {self.relation} {self.value}"


@dataclass
class StrategyOutcome:
    name: str
    ordering: Ordering
    bounds: tuple[Bound, ...]
    witnesses: dict = field(default_factory=dict)

    def build(self, ps: PointSet, table: PairTable | None = None) -> OrderedYaoGraph:
        return build_ordered(ps, self.ordering, table)

    def check(self, g: OrderedYaoGraph) -> list[tuple[Bound, int, bool]]:
        out = []
        for b in self.bounds:
            m = b.measure(g)
            out.append((b, m, b.compare(m)))
        return out

    def certify(self, ps: PointSet, table: PairTable | None = None) -> bool:
        g = self.build(ps, table)
        return all(ok for _, _, ok in self.check(g))

    def to_dict(self) -> dict:
        return {
            "strategy": self.name,
            "ordering": list(self.ordering.perm),
            "bounds": [str(b) for b in self.bounds],
            "witnesses": {k: (list(v) if isinstance(v, (tuple, list)) else v)
                          for k, v in self.witnesses.items()},
        }


def _complete(ps: PointSet, head: Sequence[int]) -> Ordering:
    """`head` followed by the remaining indices in increasing order."""
    used = set(head)
    return Ordering(tuple(head) + tuple(i for i in range(len(ps)) if i not in used))


def topmost(ps: PointSet) -> int:
    fy = frame_coords(ps)[:, 1]
    return int(np.argmax(fy))


def top_to_bottom(ps: PointSet) -> StrategyOutcome:
    n, k = len(ps), ps.k
    if n == 0:
        return StrategyOutcome("top-to-bottom", Ordering(()), ())
    fy = frame_coords(ps)[:, 1]
    perm = tuple(int(i) for i in np.argsort(-fy, kind="stable"))
    half = ceil_div(k, 2)
    bounds = (
        Bound("max_outdegree", "<=", half),
        Bound("clique", "<=", half + 1),
        Bound("edges", "<=", n * half),
    )
    return StrategyOutcome("top-to-bottom", Ordering(perm), bounds)


def orthogonal(ps: PointSet, apex: int, start_sector: int, t: int,
               selected: Sequence[int] | None = None) -> StrategyOutcome:
    """Apex first, then the points of ``t`` consecutive dual sectors sorted along their bisector.

    Every selected point ends up with an edge to the apex. `selected` defaults
    to all points lying in dual sectors ``start_sector .. start_sector+t-1``
    of the apex.
    """
    n, k = len(ps), ps.k
    if not 0 <= apex < n:
        raise StrategyError(f"apex {apex} out of range")
    if not 0 <= t <= k // 2:
        raise StrategyError(f"t must lie in [0, {k // 2}], got {t}")
    span = {(start_sector + j) % k for j in range(t)}
    p = ps[apex]
    dual = {q: dual_sector_index(p, ps[q], ps.params) for q in range(n) if q != apex}
    if selected is None:
        selected = [q for q in range(n) if q != apex and dual[q] in span]
    else:
        selected = [int(q) for q in selected]
        for q in selected:
            if q == apex or dual[q] not in span:
                raise StrategyError(f"point {q} is outside dual sectors {sorted(span)} of the apex")
    angle = ps.params.rotation + 2.0 * math.pi * (start_sector + t / 2.0) / k
    bx, by = math.cos(angle), math.sin(angle)
    chain = sorted(selected, key=lambda q: (ps[q].x * bx + ps[q].y * by, q))
    ordering = _complete(ps, [apex] + chain)
    bound = Bound("indegree", ">=", len(chain), (apex,))
    return StrategyOutcome("orthogonal", ordering, (bound,),
                           {"apex": apex, "start_sector": start_sector, "t": t,
                            "chain": tuple(chain)})


def radial(ps: PointSet, apex: int) -> StrategyOutcome:
    """Apex first, then every other point from farthest to nearest."""
    n, k = len(ps), ps.k
    if not 0 <= apex < n:
        raise StrategyError(f"apex {apex} out of range")
    p = ps[apex]
    rest = sorted((q for q in range(n) if q != apex),
                  key=lambda q: (-math.hypot(ps[q].x - p.x, ps[q].y - p.y), q))
    bounds = (Bound("indegree", ">=", n - 1, (apex,)),) if k >= 6 else ()
    return StrategyOutcome("radial", Ordering((apex, *rest)), bounds, {"apex": apex})


def degree_maximizing(ps: PointSet) -> StrategyOutcome:
    n, k = len(ps), ps.k
    if k < 2:
        raise StrategyError("degree maximisation is unsupported for k=1")
    if n == 0:
        return StrategyOutcome("degree-max", Ordering(()), ())
    apex = topmost(ps)
    if k % 2 == 0:
        out = orthogonal(ps, apex, 0, k // 2)
    elif k >= 7:
        out = radial(ps, apex)
    else:
        dual = [dual_sector_index(ps[apex], ps[q], ps.params) if q != apex else -1
                for q in range(n)]
        groups = [[q for q in range(n) if dual[q] == i] for i in range(k)]
        if k == 3:
            start = 0 if len(groups[0]) >= len(groups[1]) else 1
            out = orthogonal(ps, apex, start, 1)
        else:
            sizes = [len(g) for g in groups[:3]]
            options = [sizes[0] + sizes[1], sizes[1] + sizes[2], sizes[0] + sizes[2]]
            best = options.index(max(options))
            if best < 2:
                out = orthogonal(ps, apex, best, 2)
            else:
                p = ps[apex]
                far = sorted(groups[0] + groups[2],
                             key=lambda q: (-math.hypot(ps[q].x - p.x, ps[q].y - p.y), q))
                ordering = Ordering((apex, *far, *groups[1]))
                out = StrategyOutcome("orthogonal", ordering,
                                      (Bound("indegree", ">=", len(far), (apex,)),),
                                      {"apex": apex, "chain": tuple(far)})
            out.witnesses["dual_sector_sizes"] = tuple(sizes)
    out.name = "degree-max"
    out.witnesses.setdefault("apex", apex)
    return out


def clique_forcing(ps: PointSet, table: PairTable | None = None) -> StrategyOutcome:
    """Find a point seeing two others in distinct sectors and insert it third."""
    n = len(ps)
    if n < 3:
        raise StrategyError("clique forcing needs at least 3 points")
    table = table or PairTable(ps)
    sec = table.sector
    fy = frame_coords(ps)[:, 1]
    for triple in combinations(range(n), 3):
        middle = sorted(triple, key=lambda v: fy[v])[1]
        for apex in (middle, *(v for v in triple if v != middle)):
            a, b = (v for v in triple if v != apex)
            if sec[apex, a] != sec[apex, b]:
                ordering = _complete(ps, [a, b, apex])
                bounds = (Bound("adjacent_pairs", "==", 3, (a, b, apex), f"triangle({a},{b},{apex})"),
                          Bound("clique", ">=", 3))
                return StrategyOutcome("clique-forcing", ordering, bounds,
                                       {"triple": (a, b, apex), "apex": apex})
    raise StrategyError("no forcing triple")


def edge_max_target(n: int, k: int) -> int:
    if n <= 1:
        return 0
    if n == 2:
        return 1
    return 2 * n - 4 if k == 3 else 2 * n - 3


def greedy_edge_max(ps: PointSet, table: PairTable | None = None) -> StrategyOutcome:
    """Peel off, from the back, points whose remaining peers fill at least two sectors."""
    n, k = len(ps), ps.k
    if k < 2:
        raise StrategyError("edge maximisation is unsupported for k=1")
    table = table or PairTable(ps)
    sec = table.sector
    floor = 4 if k == 3 else 3
    remaining = list(range(n))
    tail: list[int] = []
    while len(remaining) >= floor:
        for u in remaining:
            if len({int(sec[u, v]) for v in remaining if v != u}) >= 2:
                break
        else:
            raise StrategyError("no point sees its peers in two sectors")
        remaining.remove(u)
        tail.append(u)
    ordering = Ordering(tuple(remaining) + tuple(reversed(tail)))
    bound = Bound("edges", ">=", edge_max_target(n, k))
    return StrategyOutcome("edge-max", ordering, (bound,), {"peeled": tuple(tail)})


def _longest_monotone(values: np.ndarray) -> list[int]:
    """Positions of a longest strictly increasing subsequence (patience sorting)."""
    tails: list[float] = []
    tail_pos: list[int] = []
    prev = [-1] * len(values)
    for i, v in enumerate(values):
        j = int(np.searchsorted(tails, v, side="left"))
        if j == len(tails):
            tails.append(v)
            tail_pos.append(i)
        else:
            tails[j] = v
            tail_pos[j] = i
        prev[i] = tail_pos[j - 1] if j > 0 else -1
    out = []
    i = tail_pos[-1] if tail_pos else -1
    while i != -1:
        out.append(i)
        i = prev[i]
    return out[::-1]


def monotone_chain(xp: np.ndarray, y: np.ndarray) -> tuple[list[int], int]:
    """Longest chain monotone in both `xp` and `y`.

    Returns ``(chain, sign)``: ``sign`` is +1 when ``y`` grows with ``xp`` along
    the chain and -1 when it falls. The chain is listed by decreasing ``y``.
    """
    by_x = np.argsort(xp, kind="stable")
    ys = y[by_x]
    inc = _longest_monotone(ys)
    dec = _longest_monotone(-ys)
    if len(inc) >= len(dec):
        chain, sign = [int(by_x[i]) for i in inc], 1
    else:
        chain, sign = [int(by_x[i]) for i in dec], -1
    chain.sort(key=lambda v: -y[v])
    return chain, sign


def es_edge_min(ps: PointSet) -> StrategyOutcome:
    """Edge-minimising ordering built around a long monotone chain in (x', y).

    Chain points are inserted from the dominant end, so each sees its
    predecessors inside one quadrant-like cone; every other point sees its
    predecessors on one side of a line.
    """
    n, k = len(ps), ps.k
    if k < 3:
        raise StrategyError("the x' ordering needs k >= 3")
    if n == 0:
        return StrategyOutcome("edge-min", Ordering(()), ())
    try:
        xp = frame_x_prime(ps)
    except GeometryError as exc:
        raise StrategyError(str(exc)) from exc
    y = frame_coords(ps)[:, 1]
    chain, sign = monotone_chain(xp, y)
    u = sign * xp
    m = len(chain)
    chain_set = set(chain)

    blocks: list[list[int]] = [[] for _ in range(m)]
    cu = u[chain]
    cy = y[chain]
    for p in range(n):
        if p in chain_set:
            continue
        dominated = np.nonzero((u[p] > cu) & (y[p] > cy))[0]
        first = int(dominated[0]) if len(dominated) else m
        if first == 0:
            raise StrategyError("chain partition bug")
        blocks[first - 1].append(p)

    perm: list[int] = []
    for i, q in enumerate(chain):
        upper = sorted((p for p in blocks[i] if y[p] > y[q]), key=lambda p: -u[p])
        lower = sorted((p for p in blocks[i] if y[p] < y[q]), key=lambda p: -y[p])
        perm.append(q)
        perm.extend(upper)
        perm.extend(lower)
    if len(perm) != n:
        raise StrategyError("chain partition bug")

    half, quarter = ceil_div(k, 2), ceil_div(k, 4)
    saving = (k + 1) // 4
    others = tuple(p for p in range(n) if p not in chain_set)
    bounds = (
        Bound("outdegree", "<=", quarter, tuple(chain), f"chain outdegree <= {quarter}"),
        Bound("outdegree", "<=", half, others, f"non-chain outdegree <= {half}"),
        Bound("edges", "<=", n * half - ceil_sqrt(n) * saving),
    )
    return StrategyOutcome("edge-min", Ordering(tuple(perm)), bounds,
                           {"chain": tuple(chain), "sign": sign, "m": m})


def edge_min_dispatch(ps: PointSet) -> StrategyOutcome:
    if ps.k < 2:
        raise StrategyError("edge minimisation is unsupported for k=1")
    if ps.k == 2:
        return top_to_bottom(ps)
    return es_edge_min(ps)


STRATEGIES: dict[str, Callable[..., StrategyOutcome]] = {
    "top-to-bottom": top_to_bottom,
    "orthogonal": orthogonal,
    "radial": radial,
    "degree-max": degree_maximizing,
    "clique-forcing": clique_forcing,
    "edge-max": greedy_edge_max,
    "edge-min": edge_min_dispatch,
}
