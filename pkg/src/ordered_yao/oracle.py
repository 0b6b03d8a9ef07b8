"""Extremal search over insertion orders.

Exhaustive mode walks all n! permutations in lexicographic order, split into
contiguous chunks by leading element; sampled mode draws seeded uniform
permutations. Chunks are evaluated by a vectorised builder that processes a
whole batch of orderings at once and reproduces :func:`yao.build_ordered`
exactly (it uses the same pair table). Reductions keep the first ordering
attaining the extremum, so results do not depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Optional

import numpy as np

from .geometry import PointSet
from .yao import Ordering, PairTable, _max_clique_within, build_ordered, stats

METRICS = ("edges", "max_indegree", "clique")
OBJECTIVES = ("min", "max")
EXHAUSTIVE_LIMIT = 9

ProgressHook = Callable[[int, int], None]


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    metric: str
    objective: str
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0
    limit: int = EXHAUSTIVE_LIMIT

    def __post_init__(self):
        if self.metric not in METRICS:
            raise GuardError(f"unknown metric {self.metric!r}")
        if self.objective not in OBJECTIVES:
            raise GuardError(f"unknown objective {self.objective!r}")
        if self.mode not in ("exhaustive", "sampled"):
            raise GuardError(f"unknown mode {self.mode!r}")
        if self.mode == "sampled" and self.count < 1:
            raise GuardError("sampled mode needs count >= 1")
        if self.limit > EXHAUSTIVE_LIMIT:
            raise GuardError(f"exhaustive limit cannot exceed {EXHAUSTIVE_LIMIT}")


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness_ordering: Ordering
    exhaustive: bool
    orderings_examined: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness_ordering": list(self.witness_ordering.perm),
            "exhaustive": self.exhaustive,
            "orderings_examined": self.orderings_examined,
        }


@dataclass(frozen=True)
class Certificate:
    ok: bool
    value: int
    relation: str
    bound: int
    counterexample: Optional[Ordering]
    result: SearchResult


# -- vectorised builder --------------------------------------------------------

def batch_targets(perms: np.ndarray, table: PairTable) -> np.ndarray:
    """Out-neighbours for a batch of orderings.

    ``perms`` has shape ``(P, n)``; the result ``T`` has shape ``(P, n, k)``
    with ``T[p, u, s]`` the target of vertex ``u``'s edge in sector ``s`` under
    ordering ``p``, or -1.
    """
    P, n = perms.shape
    k = table.k
    T = np.full((P, n, k), -1, dtype=np.int16)
    rows = np.arange(P)
    big = np.iinfo(np.int64).max
    for i in range(1, n):
        u = perms[:, i]
        best = np.full((P, k), big, dtype=np.int64)
        tgt = np.full((P, k), -1, dtype=np.int16)
        for j in range(i):
            v = perms[:, j]
            s = table.sector[u, v]
            r = table.rank[u, v]
            upd = r < best[rows, s]
            ru, su = rows[upd], s[upd]
            best[ru, su] = r[upd]
            tgt[ru, su] = v[upd]
        T[rows, u] = tgt
    return T


def _clique_from_targets(tp: np.ndarray) -> int:
    n = tp.shape[0]
    adj = [set() for _ in range(n)]
    outs = []
    for u in range(n):
        o = [int(v) for v in tp[u] if v >= 0]
        outs.append(o)
        for v in o:
            adj[u].add(v)
            adj[v].add(u)
    best = 1 if n else 0
    for u in range(n):
        if len(outs[u]) + 1 > best:
            best = max(best, 1 + _max_clique_within(adj, set(outs[u])))
    return best


def metric_values(perms: np.ndarray, table: PairTable, metric: str) -> np.ndarray:
    """Metric value of every ordering in the batch."""
    P, n = perms.shape
    if n == 0:
        return np.zeros(P, dtype=np.int64)
    T = batch_targets(perms, table)
    if metric == "edges":
        return (T >= 0).sum(axis=(1, 2)).astype(np.int64)
    if metric == "max_indegree":
        flat = T.reshape(P, -1)
        mask = flat >= 0
        rows = np.broadcast_to(np.arange(P)[:, None], flat.shape)[mask]
        counts = np.bincount(rows * n + flat[mask], minlength=P * n).reshape(P, n)
        return counts.max(axis=1)
    if metric == "clique":
        return np.array([_clique_from_targets(T[p]) for p in range(P)], dtype=np.int64)
    raise GuardError(f"unknown metric {metric!r}")


# -- search ----------------------------------------------------------------------

def _chunk_perms(n: int, first: int) -> np.ndarray:
    rest = [i for i in range(n) if i != first]
    body = np.array(list(permutations(rest)), dtype=np.int64).reshape(-1, n - 1)
    return np.column_stack([np.full(len(body), first, dtype=np.int64), body])


def _pick(values: np.ndarray, objective: str) -> int:
    return int(np.argmax(values) if objective == "max" else np.argmin(values))


def _eval_chunk(args) -> tuple[int, list[int], int]:
    ps, perms, metric, objective = args
    table = PairTable(ps)
    vals = metric_values(perms, table, metric)
    i = _pick(vals, objective)
    return int(vals[i]), [int(v) for v in perms[i]], len(perms)


def _better(a: int, b: int, objective: str) -> bool:
    return a > b if objective == "max" else a < b


def sample_perms(n: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    base = np.tile(np.arange(n, dtype=np.int64), (count, 1))
    return rng.permuted(base, axis=1)


def search(ps: PointSet, spec: SearchSpec, workers: int = 1,
           progress: ProgressHook | None = None, chunk_size: int = 50_000) -> SearchResult:
    n = len(ps)
    if spec.mode == "exhaustive":
        if n > spec.limit:
            raise GuardError(f"exhaustive search refused: n={n} exceeds limit {spec.limit}")
        if n == 0:
            return SearchResult(0, Ordering(()), True, 1)
        chunks = (_chunk_perms(n, f) for f in range(n))
        total = math.factorial(n)
    else:
        perms = sample_perms(n, spec.count, spec.seed)
        chunks = (perms[i:i + chunk_size] for i in range(0, len(perms), chunk_size))
        total = spec.count

    jobs = ((ps, c, spec.metric, spec.objective) for c in chunks)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_eval_chunk, jobs))
    else:
        results = map(_eval_chunk, jobs)

    best_val, best_perm, done = None, None, 0
    for val, perm, size in results:
        done += size
        if best_val is None or _better(val, best_val, spec.objective):
            best_val, best_perm = val, perm
        if progress is not None:
            progress(done, total)
    return SearchResult(best_val, Ordering(tuple(best_perm)), spec.mode == "exhaustive", done)


def certify_bound(ps: PointSet, spec: SearchSpec, relation: str, bound: int,
                  **kw) -> Certificate:
    """Check the extremal metric value against ``relation bound`` ('<=', '>=' or '==')."""
    res = search(ps, spec, **kw)
    if relation == "<=":
        ok = res.value <= bound
    elif relation == ">=":
        ok = res.value >= bound
    elif relation == "==":
        ok = res.value == bound
    else:
        raise GuardError(f"unknown relation {relation!r}")
    return Certificate(ok, res.value, relation, bound,
                       None if ok else res.witness_ordering, res)


def replay(ps: PointSet, ordering: Ordering, metric: str) -> int:
    """Metric of the graph built by the scalar builder; the witness check."""
    st = stats(build_ordered(ps, ordering))
    return {"edges": st.edges, "max_indegree": st.max_indegree,
            "clique": st.clique_number}[metric]
