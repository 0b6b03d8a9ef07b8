#!/usr/bin/env python3
"""Run an acceptance suite and exit non-zero if any criterion fails."""

import argparse
import sys

from ordered_yao.acceptance import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suite", nargs="?", default="all", choices=list(SUITES))
    args = ap.parse_args()
    results = run_suite(args.suite)
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
