"""Two-stage clustering: partition, compress each part, cluster the representatives.

The local stage is a fork-join over partitions. Each task reads its own
rows of the scaled matrix and returns its local centers; results are
joined in part order and every task's seed depends only on
``(seed, part index)``, so the outcome does not depend on ``parallelism``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import layout as _layout
from .kmeans_core import ClusteringModel, InvalidArgumentError, _assign_with_dist, _lloyd, as_points
from .partitioning import SCHEMES, partition
from .preprocessing import ScalingParams, fit_minmax, inverse_transform, transform


class ConfigError(ValueError):
    """A pipeline configuration that cannot produce the requested clustering."""


@dataclass
class PipelineConfig:
    k: int
    scheme: str = "unequal"
    num_subclusters: int = 1
    compression: float = 1.0
    seed: int = 0
    max_iters: int = 300
    tol: float = 1e-4
    parallelism: int = 1
    layout: str = _layout.ROW_MAJOR

    def validate(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.num_subclusters < 1:
            raise ConfigError(f"subcluster count must be >= 1, got {self.num_subclusters}")
        if not self.compression >= 1:
            raise ConfigError(f"compression must be >= 1, got {self.compression}")
        if self.scheme == "none" and self.num_subclusters != 1:
            raise ConfigError("scheme 'none' requires exactly one subcluster")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol < 0:
            raise ConfigError(f"tol must be nonnegative, got {self.tol}")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be >= 1, got {self.parallelism}")
        _layout._numpy_order(self.layout)
        return self


@dataclass
class PipelineResult:
    model: ClusteringModel
    centers_original: np.ndarray
    scaling: ScalingParams
    local_center_count: int
    per_partition_sizes: list[int]
    partition_labels: np.ndarray
    timings: dict[str, float] = field(default_factory=dict)
    dropped_empty: int = 0
    local_distance_evals: int = 0
    global_distance_evals: int = 0

    @property
    def sse(self) -> float:
        return self.model.sse


def local_center_count(part_size: int, compression: float) -> int:
    """Representatives kept for one part: ``round(size / c)``, at least 1, at most ``size``.

    Halves round up.
    """
    if part_size < 1:
        raise InvalidArgumentError(f"part_size must be >= 1, got {part_size}")
    if not compression >= 1:
        raise InvalidArgumentError(f"compression must be >= 1, got {compression}")
    return min(part_size, max(1, math.floor(part_size / compression + 0.5)))


def derive_seed(seed: int, stage: str, index: int = 0) -> int:
    """Independent 64-bit seed for one task, a pure function of its inputs."""
    tag = {"global": 0, "local": 1}[stage]
    ss = np.random.SeedSequence(entropy=int(seed) % 2**64, spawn_key=(tag, int(index)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _local_task(buf, k_local, seed, max_iters, tol):
    Z = _layout.reconstruct(buf)
    if k_local == Z.shape[0]:
        # one center per point; nothing to iterate
        return Z, 0
    model = _lloyd(Z, k_local, max_iters, tol, seed)
    return model.centers, model.n_distance_evals


def _ms(t0):
    return (time.perf_counter() - t0) * 1e3


def two_stage_cluster(points, config: PipelineConfig) -> PipelineResult:
    config.validate()
    X = as_points(points)
    m = X.shape[0]
    if config.k > m:
        raise InvalidArgumentError(f"k={config.k} exceeds the number of points M={m}")

    t_start = time.perf_counter()
    params = fit_minmax(X)
    Z = transform(X, params)
    pset = partition(Z, config.scheme, config.num_subclusters)
    partition_ms = _ms(t_start)

    t0 = time.perf_counter()
    sizes = pset.sizes
    k_locals = [local_center_count(n, config.compression) for n in sizes]
    total_local = sum(k_locals)
    if total_local < config.k:
        raise ConfigError(
            f"only {total_local} local centers for k={config.k}; "
            "lower the compression value or the number of subclusters"
        )
    bufs = _layout.gather_flat(Z, pset.parts, config.layout)
    seeds = [derive_seed(config.seed, "local", i) for i in range(len(bufs))]
    args = [(b, kl, sd, config.max_iters, config.tol) for b, kl, sd in zip(bufs, k_locals, seeds)]
    if config.parallelism > 1 and len(args) > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            outputs = list(pool.map(lambda a: _local_task(*a), args))
    else:
        outputs = [_local_task(*a) for a in args]
    local_centers = np.ascontiguousarray(np.concatenate([c for c, _ in outputs]))
    local_evals = sum(n for _, n in outputs)
    local_ms = _ms(t0)

    t0 = time.perf_counter()
    glob = _lloyd(local_centers, config.k, config.max_iters, config.tol,
                  derive_seed(config.seed, "global"))
    labels, mind = _assign_with_dist(Z, glob.centers)
    global_ms = _ms(t0)

    model = ClusteringModel(centers=glob.centers, assignments=labels, sse=float(mind.sum()),
                            iterations_run=glob.iterations_run,
                            n_distance_evals=glob.n_distance_evals + m * config.k,
                            empty_repairs=glob.empty_repairs)
    return PipelineResult(
        model=model,
        centers_original=inverse_transform(glob.centers, params),
        scaling=params,
        local_center_count=total_local,
        per_partition_sizes=sizes,
        partition_labels=pset.labels(m),
        timings={"partition_ms": partition_ms, "local_ms": local_ms,
                 "global_ms": global_ms, "total_ms": _ms(t_start)},
        dropped_empty=pset.dropped_empty,
        local_distance_evals=local_evals,
        global_distance_evals=model.n_distance_evals,
    )


def run_standard(points, k: int, seed: int = 0, max_iters: int = 300,
                 tol: float = 1e-4) -> PipelineResult:
    """Plain k-means on the scaled data; the baseline the pipeline is compared to.

    Uses the same global seed derivation as :func:`two_stage_cluster`, so a
    pipeline run with no partitioning and no compression reproduces it exactly.
    """
    X = as_points(points)
    m = X.shape[0]
    if k < 1 or k > m:
        raise InvalidArgumentError(f"k must be in [1, M={m}], got {k}")
    if max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be >= 1, got {max_iters}")
    if tol < 0:
        raise InvalidArgumentError(f"tol must be nonnegative, got {tol}")
    t_start = time.perf_counter()
    params = fit_minmax(X)
    Z = transform(X, params)
    partition_ms = _ms(t_start)
    t0 = time.perf_counter()
    model = _lloyd(Z, k, max_iters, tol, derive_seed(seed, "global"))
    global_ms = _ms(t0)
    return PipelineResult(
        model=model,
        centers_original=inverse_transform(model.centers, params),
        scaling=params,
        local_center_count=m,
        per_partition_sizes=[m],
        partition_labels=np.zeros(m, dtype=np.int64),
        timings={"partition_ms": partition_ms, "local_ms": 0.0,
                 "global_ms": global_ms, "total_ms": _ms(t_start)},
        global_distance_evals=model.n_distance_evals,
    )
