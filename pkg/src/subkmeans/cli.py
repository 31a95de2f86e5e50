"""Command line entry point: ``subkmeans cluster | gen | bench``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from .bench import run_benchmark
from .datasets import SyntheticSpec, gen_synthetic, load_csv
from .kmeans_core import InvalidArgumentError
from .pipeline import ConfigError, PipelineConfig, two_stage_cluster


def _int_list(text):
    return [int(float(t)) for t in text.split(",") if t.strip()]


def _float_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _str_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", newline="")


def cmd_cluster(args):
    X, _ = load_csv(args.input, has_header=args.header, label_column=args.label_column,
                    delimiter=None if args.whitespace else args.delimiter)
    cfg = PipelineConfig(k=args.k, scheme=args.scheme, num_subclusters=args.subclusters,
                         compression=args.compression, seed=args.seed, max_iters=args.max_iters,
                         tol=args.tol, parallelism=args.threads, layout=args.layout)
    res = two_stage_cluster(X, cfg)

    fh = _open_out(args.output)
    try:
        writer = csv.writer(fh)
        writer.writerow([f"x{j}" for j in range(X.shape[1])])
        for row in res.centers_original:
            writer.writerow([repr(float(v)) for v in row])
    finally:
        if fh is not sys.stdout:
            fh.close()

    if args.assignments:
        with open(args.assignments, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["point", "cluster", "partition"])
            for i, (c, p) in enumerate(zip(res.model.assignments, res.partition_labels)):
                writer.writerow([i, int(c), int(p)])
    if args.emit_partitions:
        with open(args.emit_partitions, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["point", "partition"] + [f"x{j}" for j in range(X.shape[1])])
            for i in range(X.shape[0]):
                writer.writerow([i, int(res.partition_labels[i]),
                                 *(repr(float(v)) for v in X[i])])
    print(f"sse={res.sse:.6g} (scaled space) k={cfg.k} local_centers={res.local_center_count} "
          f"parts={len(res.per_partition_sizes)} dropped_empty={res.dropped_empty} "
          f"total_ms={res.timings['total_ms']:.1f}", file=sys.stderr)
    return 0


def cmd_gen(args):
    spec = SyntheticSpec(total_points=args.total, points_per_cluster=args.per_cluster,
                         dims=args.dims, cluster_std=args.std,
                         box=(args.box_low, args.box_high), seed=args.seed)
    X, labels, _ = gen_synthetic(spec)
    fh = _open_out(args.output)
    try:
        writer = csv.writer(fh)
        header = [f"x{j}" for j in range(spec.dims)]
        writer.writerow(header + (["label"] if args.labels else []))
        for row, lab in zip(X, labels):
            cells = [repr(float(v)) for v in row]
            writer.writerow(cells + ([int(lab)] if args.labels else []))
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_bench(args):
    kwargs = {}
    if args.subclusters is not None:
        kwargs["subcluster_rule"] = lambda size: args.subclusters
    report = run_benchmark(args.sizes, args.schemes, args.compressions, args.seeds,
                           parallelism=args.threads, repeats=args.repeats,
                           warmup=not args.no_warmup, max_iters=args.max_iters, tol=args.tol,
                           layout=args.layout, emit_partitions=args.emit_partitions,
                           synthetic={"cluster_std": args.std,
                                      "box": (args.box_low, args.box_high)}, **kwargs)
    if args.report_csv:
        report.to_csv(args.report_csv)
    if args.report_json:
        report.to_json(args.report_json)
    for row in report.rows:
        if row["error"]:
            print(f"n={row['dataset_size']} {row['scheme']} c={row['c']:g}: ERROR {row['error']}")
        else:
            print(f"n={row['dataset_size']} {row['scheme']} s={row['s']} c={row['c']:g} k={row['k']}: "
                  f"standard {row['standard_time_ms']:.0f} ms, pipeline {row['pipeline_time_ms']:.0f} ms, "
                  f"speedup {row['speedup']:.2f}x, sse ratio {row['sse_ratio']:.4f}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="subkmeans", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a CSV file with the two-stage pipeline")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--scheme", choices=["equal", "unequal", "none"], default="unequal")
    p.add_argument("--subclusters", type=int, default=1)
    p.add_argument("--compression", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--layout", choices=["row_major", "column_major"], default="row_major")
    p.add_argument("--output", help="centers CSV in original units (default stdout)")
    p.add_argument("--assignments", help="per-point CSV: point, cluster, partition")
    p.add_argument("--emit-partitions", help="per-point CSV: point, partition, features")
    hdr = p.add_mutually_exclusive_group()
    hdr.add_argument("--header", dest="header", action="store_true", default=None)
    hdr.add_argument("--no-header", dest="header", action="store_false")
    p.add_argument("--label-column", type=int, default=None,
                   help="column index excluded from features (-1 = last)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--whitespace", action="store_true", help="split fields on whitespace")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("gen", help="write a synthetic Gaussian-blob dataset")
    p.add_argument("--total", type=int, required=True)
    p.add_argument("--per-cluster", type=int, default=500)
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--std", type=float, default=0.5)
    p.add_argument("--box-low", type=float, default=0.0)
    p.add_argument("--box-high", type=float, default=100.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", action="store_true", help="append the true blob label column")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time plain k-means against the pipeline")
    p.add_argument("--sizes", type=_int_list, default=[100000, 250000, 500000])
    p.add_argument("--compressions", type=_float_list, default=[5.0, 10.0, 15.0])
    p.add_argument("--schemes", type=_str_list, default=["unequal"])
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--subclusters", type=int, default=None,
                   help="fixed subcluster count (default: size / 500)")
    p.add_argument("--threads", type=int, default=4)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--no-warmup", action="store_true")
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--std", type=float, default=0.5)
    p.add_argument("--box-low", type=float, default=0.0)
    p.add_argument("--box-high", type=float, default=100.0)
    p.add_argument("--layout", choices=["row_major", "column_major"], default="row_major")
    p.add_argument("--report-csv")
    p.add_argument("--report-json")
    p.add_argument("--emit-partitions", metavar="DIR")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidArgumentError, ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
