"""Ordered and unordered k-sector Yao graphs and their statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .geometry import PointSet, distance_matrix, pair_ticks

UNORDERED = -1

# exact clique search branches over out-neighbourhoods of size <= k
MAX_CLIQUE_K = 24


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise GraphError(f"not a permutation of 0..{len(perm) - 1}: {list(perm)}")
        object.__setattr__(self, "perm", perm)

    def __len__(self) -> int:
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)

    def positions(self) -> list[int]:
        pos = [0] * len(self.perm)
        for rank, v in enumerate(self.perm):
            pos[v] = rank
        return pos

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))


class PairTable:
    """Per-pair sector indices and neighbour priorities of a point set.

    ``rank[u, v]`` orders the candidates of one sector of ``u``: smaller is
    closer. Distances within ``eps_dist`` of each other count as tied, and
    tied candidates are ranked by their angle from the sector's clockwise
    boundary ray. On inputs in general position this is plain distance order.
    """

    def __init__(self, ps: PointSet):
        self.n = n = len(ps)
        self.k = k = ps.k
        xy = ps.coords()
        if n == 0:
            self.sector = np.zeros((0, 0), dtype=np.int64)
            self.dist = np.zeros((0, 0))
            self.rank = np.zeros((0, 0), dtype=np.int64)
            return
        ticks = pair_ticks(xy, ps.params)
        floor = np.floor(np.nan_to_num(ticks, nan=0.0))
        sector = floor.astype(np.int64) % k
        np.fill_diagonal(sector, -1)
        offset = np.nan_to_num(ticks - floor, nan=0.0)
        dist = distance_matrix(xy)
        eps = ps.eps_dist()

        # sort each row by (sector, distance), the diagonal last
        s_key = np.where(sector < 0, k, sector)
        d_key = np.where(sector < 0, np.inf, dist)
        o = np.lexsort((d_key, s_key), axis=1)
        s_o = np.take_along_axis(s_key, o, axis=1)
        d_o = np.take_along_axis(d_key, o, axis=1)
        a_o = np.take_along_axis(offset, o, axis=1)
        brk = np.ones((n, n), dtype=bool)
        brk[:, 1:] = (s_o[:, 1:] != s_o[:, :-1]) | (d_o[:, 1:] - d_o[:, :-1] > eps)
        cluster = np.cumsum(brk, axis=1)
        o2 = np.lexsort((a_o, cluster), axis=1)
        rank = np.empty((n, n), dtype=np.int64)
        np.put_along_axis(rank, np.take_along_axis(o, o2, axis=1),
                          np.broadcast_to(np.arange(n), (n, n)), axis=1)
        self.sector = sector
        self.dist = dist
        self.rank = rank


@dataclass(frozen=True, eq=False)
class OrderedYaoGraph:
    """Directed Yao graph.

    ``out_edges[u]`` lists ``(target, sector)`` pairs. ``order_position[u]`` is
    the insertion rank of ``u``, or ``-1`` for every vertex of an unordered graph.
    """

    n: int
    k: int
    out_edges: tuple[tuple[tuple[int, int], ...], ...]
    order_position: tuple[int, ...]

    def __post_init__(self):
        if len(self.out_edges) != self.n or len(self.order_position) != self.n:
            raise GraphError("vertex count mismatch")
        ordered = self.ordered
        for u, out in enumerate(self.out_edges):
            seen = set()
            for v, s in out:
                if not (0 <= v < self.n) or v == u:
                    raise GraphError(f"bad edge {u}->{v}")
                if not (0 <= s < self.k):
                    raise GraphError(f"bad sector {s} on edge {u}->{v}")
                if s in seen:
                    raise GraphError(f"vertex {u} has two edges in sector {s}")
                seen.add(s)
                if ordered and self.order_position[v] >= self.order_position[u]:
                    raise GraphError(f"edge {u}->{v} does not point to a predecessor")

    @property
    def ordered(self) -> bool:
        return self.n > 0 and self.order_position[0] != UNORDERED

    @property
    def ordering(self) -> Ordering | None:
        if not self.ordered:
            return None
        perm = [0] * self.n
        for v, r in enumerate(self.order_position):
            perm[r] = v
        return Ordering(tuple(perm))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, s) for u, out in enumerate(self.out_edges) for v, s in out]

    def edge_set(self) -> set[tuple[int, int, int]]:
        return set(self.edges())

    def out_neighbors(self, u: int) -> list[int]:
        return [v for v, _ in self.out_edges[u]]

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v, _ in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj

    # -- serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        ordering = self.ordering
        return {
            "n": self.n,
            "k": self.k,
            "edges": [list(e) for e in self.edges()],
            "order": list(ordering.perm) if ordering else None,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "OrderedYaoGraph":
        n, k = int(data["n"]), int(data["k"])
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, s in data["edges"]:
            out[int(u)].append((int(v), int(s)))
        order = data.get("order")
        if order is None:
            pos = (UNORDERED,) * n
        else:
            pos = tuple(Ordering(tuple(order)).positions())
        return cls(n, k, tuple(tuple(sorted(o, key=lambda e: e[1])) for o in out), pos)

    @classmethod
    def from_json(cls, text: str) -> "OrderedYaoGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, ps: PointSet | None = None, name: str = "yao") -> str:
        lines = [f"digraph {name} {{", f"  // k={self.k}"]
        for u in range(self.n):
            attrs = [f'label="{u}"']
            if ps is not None:
                p = ps[u]
                attrs.append(f'pos="{p.x:.12g},{p.y:.12g}!"')
            if self.ordered:
                attrs.append(f'rank="{self.order_position[u]}"')
            lines.append(f"  {u} [{', '.join(attrs)}];")
        for u, v, s in self.edges():
            lines.append(f'  {u} -> {v} [label="{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_sizes(ps: PointSet, table: PairTable | None) -> PairTable:
    if table is None:
        return PairTable(ps)
    if table.n != len(ps) or table.k != ps.k:
        raise GraphError("pair table does not match point set")
    return table


def _closest_per_sector(table: PairTable, allowed: np.ndarray):
    """Per vertex, the lowest-rank allowed candidate in each sector."""
    n, k = table.n, table.k
    big = np.iinfo(np.int64).max
    targets = np.full((n, k), -1, dtype=np.int64)
    rows = np.arange(n)
    for s in range(k):
        r = np.where(allowed & (table.sector == s), table.rank, big)
        best = r.argmin(axis=1) if n else rows
        hit = r[rows, best] < big
        targets[hit, s] = best[hit]
    return tuple(tuple((int(v), s) for s, v in enumerate(row) if v >= 0)
                 for row in targets.tolist())


def build_ordered(ps: PointSet, ordering: Ordering | Sequence[int],
                  table: PairTable | None = None) -> OrderedYaoGraph:
    """Insert points in `ordering`; each new point links to its closest predecessor per sector."""
    if not isinstance(ordering, Ordering):
        ordering = Ordering(tuple(ordering))
    n = len(ps)
    if len(ordering) != n:
        raise GraphError(f"ordering has {len(ordering)} entries for {n} points")
    table = _check_sizes(ps, table)
    pos = np.asarray(ordering.positions(), dtype=np.int64)
    out = _closest_per_sector(table, pos[None, :] < pos[:, None])
    return OrderedYaoGraph(n, ps.k, tuple(out), tuple(ordering.positions()))


def build_unordered(ps: PointSet, table: PairTable | None = None) -> OrderedYaoGraph:
    """Classic Yao graph: every point links to its closest neighbour in each nonempty sector."""
    n = len(ps)
    table = _check_sizes(ps, table)
    allowed = ~np.eye(n, dtype=bool)
    out = _closest_per_sector(table, allowed)
    return OrderedYaoGraph(n, ps.k, tuple(out), (UNORDERED,) * n)


# -- statistics ---------------------------------------------------------------

@dataclass(frozen=True)
class GraphStats:
    edges: int
    indeg: tuple[int, ...]
    outdeg: tuple[int, ...]
    max_indegree: int
    clique_number: int
    acyclic: bool

    @property
    def max_outdegree(self) -> int:
        return max(self.outdeg, default=0)

    def to_dict(self) -> dict:
        return {
            "edges": self.edges,
            "max_indegree": self.max_indegree,
            "max_outdegree": self.max_outdegree,
            "clique_number": self.clique_number,
            "acyclic": self.acyclic,
            "indeg": list(self.indeg),
            "outdeg": list(self.outdeg),
        }


def _max_clique_within(adj: list[set[int]], cand: set[int]) -> int:
    """Size of a maximum clique inside `cand` (Bron-Kerbosch with pivoting)."""
    best = 0

    def expand(size: int, p: set[int], x: set[int]) -> None:
        nonlocal best
        if not p:
            if not x:
                best = max(best, size)
            return
        if size + len(p) <= best:
            return
        pivot = max(p | x, key=lambda w: len(adj[w] & p))
        for v in list(p - adj[pivot]):
            expand(size + 1, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(0, set(cand), set())
    return best


def clique_number(g: OrderedYaoGraph) -> int:
    """Exact clique number of the undirected support of `g`."""
    if g.k > MAX_CLIQUE_K:
        raise GraphError(f"clique search supports k <= {MAX_CLIQUE_K}, got {g.k}")
    if g.n == 0:
        return 0
    adj = g.adjacency
    if not g.ordered:
        return _max_clique_within(adj, set(range(g.n)))
    # the latest-inserted vertex of a clique has every other member as an out-neighbour
    best = 1
    for u in range(g.n):
        nbrs = set(g.out_neighbors(u))
        if len(nbrs) + 1 > best:
            best = max(best, 1 + _max_clique_within(adj, nbrs))
    return best


def is_acyclic(g: OrderedYaoGraph) -> bool:
    indeg = [0] * g.n
    for _, v, _ in g.edges():
        indeg[v] += 1
    stack = [u for u in range(g.n) if indeg[u] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v, _ in g.out_edges[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == g.n


def stats(g: OrderedYaoGraph) -> GraphStats:
    indeg = [0] * g.n
    outdeg = [len(o) for o in g.out_edges]
    for _, v, _ in g.edges():
        indeg[v] += 1
    return GraphStats(
        edges=sum(outdeg),
        indeg=tuple(indeg),
        outdeg=tuple(outdeg),
        max_indegree=max(indeg, default=0),
        clique_number=clique_number(g),
        acyclic=is_acyclic(g),
    )


def indegree(g: OrderedYaoGraph, v: int) -> int:
    return sum(1 for _, t, _ in g.edges() if t == v)


def edge_count(g: OrderedYaoGraph) -> int:
    return sum(len(o) for o in g.out_edges)


def graphs_for(ps: PointSet, orderings: Iterable[Sequence[int]]):
    """Build the ordered graph for each ordering, sharing one pair table."""
    table = PairTable(ps)
    for perm in orderings:
        yield build_ordered(ps, perm, table)
