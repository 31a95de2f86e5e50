#!/usr/bin/env python
"""Time the compiled kernels against the numpy fallback.

    python benchmarks/compare_backends.py --points 200000 --centers 200
"""

import argparse
import timeit

import numpy as np

from subkmeans import _backend
from subkmeans.datasets import SyntheticSpec, gen_synthetic
from subkmeans.pipeline import PipelineConfig, two_stage_cluster
from subkmeans.preprocessing import fit_minmax, transform


def kernel_cases(X, C, s):
    m = X.shape[0]
    labels = np.empty(m, dtype=np.int64)
    mind = np.empty(m)
    L, H = X.min(axis=0), X.max(axis=0)
    marks = np.ascontiguousarray(L + (np.arange(s) / (s - 1))[:, None] * (H - L))
    size = -(-m // s)

    def cases(mod):
        sums, counts = np.zeros_like(C), np.zeros(C.shape[0], dtype=np.int64)
        return {
            "assign_nearest": lambda: mod.assign_nearest(X, C, labels, mind),
            "sum_by_label": lambda: mod.sum_by_label(X, labels, sums, counts),
            "assign_on_segment": lambda: mod.assign_on_segment(X, marks, L, H, labels),
            "equal_rounds": lambda: mod.equal_rounds(X, s, size),
        }
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--points", type=int, default=200_000)
    parser.add_argument("--centers", type=int, default=200)
    parser.add_argument("--subclusters", type=int, default=100)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = _backend.available()
    X, _, _ = gen_synthetic(SyntheticSpec(total_points=args.points // 500 * 500, seed=0))
    Z = transform(X, fit_minmax(X))
    C = np.ascontiguousarray(Z[:: max(1, Z.shape[0] // args.centers)][: args.centers])
    make = kernel_cases(Z, C, args.subclusters)

    results = {}
    for name in backends:
        mod = _backend.load(name)
        for case, fn in make(mod).items():
            results[(case, name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    k = Z.shape[0] // 500
    cfg = PipelineConfig(k=k, scheme="unequal", num_subclusters=k, compression=5, seed=0)
    for name in backends:
        saved = _backend.kernels
        _backend.kernels = _backend.load(name)
        try:
            results[("two_stage_cluster", name)] = min(
                timeit.repeat(lambda: two_stage_cluster(X, cfg), number=1, repeat=args.repeat))
        finally:
            _backend.kernels = saved

    print(f"{Z.shape[0]} points, {C.shape[0]} centers, {args.subclusters} subclusters")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + "     ratio")
    for case in [c for c, b in results if b == backends[0]]:
        row = [results[(case, b)] for b in backends]
        ratio = f"{row[1] / row[0]:8.1f}x" if len(row) == 2 else ""
        print(f"{case:<20}" + "".join(f"{t * 1e3:10.1f}ms" for t in row) + "  " + ratio)


if __name__ == "__main__":
    main()
