"""Slow reference builder used to cross-check :mod:`ordered_yao.yao`.

Plain loops over predecessors and sectors with scalar predicates; no pair
table, no numpy. Only meaningful on inputs in general position.
"""

from __future__ import annotations

import math
from typing import Sequence

from .geometry import PointSet, sector_index


def naive_edges(ps: PointSet, perm: Sequence[int]) -> set[tuple[int, int, int]]:
    edges = set()
    for i, u in enumerate(perm):
        p = ps[u]
        for s in range(ps.k):
            best, best_d = None, math.inf
            for v in perm[:i]:
                q = ps[v]
                if sector_index(p, q, ps.params) != s:
                    continue
                d = math.hypot(q.x - p.x, q.y - p.y)
                if d < best_d:
                    best, best_d = v, d
            if best is not None:
                edges.add((u, best, s))
    return edges
