#!/usr/bin/env python3
"""Run every automatic strategy over random point sets and tabulate the statistics.

Prints one row per (k, strategy): mean and worst values of max indegree,
edge count and clique number, plus how many outcomes met their own bounds.
"""

import argparse
import os

import numpy as np

from ordered_yao.constructions import random_points
from ordered_yao.orderings import STRATEGIES
from ordered_yao.yao import PairTable, stats

AUTO = ("top-to-bottom", "degree-max", "clique-forcing", "edge-max", "edge-min")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--k", type=int, nargs="+", default=list(range(2, 10)))
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=int(os.environ.get("YAO_SEED", 0)))
    args = ap.parse_args()

    print(f"{'k':>3} {'strategy':<15} {'indeg':>12} {'edges':>14} {'clique':>10} {'certified':>10}")
    for k in args.k:
        rows = {name: [] for name in AUTO}
        for t in range(args.trials):
            ps = random_points(args.n, k, seed=args.seed + t)
            table = PairTable(ps)
            for name in AUTO:
                fn = STRATEGIES[name]
                out = fn(ps, table) if name in ("clique-forcing", "edge-max") else fn(ps)
                g = out.build(ps, table)
                s = stats(g)
                ok = all(c for _, _, c in out.check(g))
                rows[name].append((s.max_indegree, s.edges, s.clique_number, ok))
        for name, vals in rows.items():
            a = np.array(vals, dtype=float)
            print(f"{k:>3} {name:<15} {a[:, 0].mean():6.1f}/{a[:, 0].min():4.0f} "
                  f"{a[:, 1].mean():7.1f}/{a[:, 1].max():5.0f} "
                  f"{a[:, 2].mean():4.1f}/{a[:, 2].max():3.0f} {int(a[:, 3].sum()):>6}/{len(a)}")


if __name__ == "__main__":
    main()
