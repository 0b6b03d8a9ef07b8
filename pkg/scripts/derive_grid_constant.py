#!/usr/bin/env python3
"""Recompute the perturbed-grid constant by exhaustive search on small grids.

For each k, finds the fewest edges any ordering of ``grid_hard(n, k)`` can
produce and solves ``n*ceil(k/2) - c*k^2*sqrt(n) = min_edges`` for ``c``.
"""

import argparse

from ordered_yao.acceptance import GRID_C, derive_grid_constant


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=9, help="square number of grid points (<= 9)")
    ap.add_argument("--k", type=int, nargs="+", default=[4, 6])
    args = ap.parse_args()

    c, detail = derive_grid_constant(args.n, tuple(args.k))
    for k, row in detail.items():
        print(f"k={k}: min edges {row['min_edges']}, c={row['c']}")
    print(f"derived c = {c}; frozen GRID_C = {GRID_C}; match: {c == GRID_C}")


if __name__ == "__main__":
    main()
