#!/usr/bin/env python3
"""Timing probe for the numerical kernels at growing corpus sizes.

Usage:
    python scripts/profile_analytics.py [--max-n 2000]
"""

import argparse
import time

import numpy as np

from notecorpus.analytics import dbscan, mds_project, standardize


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=2000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    n = 125
    while n <= args.max_n:
        matrix = rng.normal(size=(n, 28))
        t0 = time.perf_counter()
        z, _ = standardize(matrix)
        layout = mds_project(z)
        t_mds = time.perf_counter() - t0

        t0 = time.perf_counter()
        dbscan(layout.coords, eps=layout.diameter * 0.1, compute_hulls=False)
        t_db = time.perf_counter() - t0

        t0 = time.perf_counter()
        dbscan(layout.coords, eps=layout.diameter * 0.1)
        t_hull = time.perf_counter() - t0
        print(
            f"n={n:5d}  mds={t_mds * 1e3:8.1f} ms  dbscan={t_db * 1e3:7.1f} ms  "
            f"dbscan+hulls={t_hull * 1e3:8.1f} ms  stress={layout.stress:.3f}"
        )
        n *= 2


if __name__ == "__main__":
    main()
