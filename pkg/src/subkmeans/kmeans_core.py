"""Lloyd's k-means on dense float64 matrices.

Distances are squared Euclidean throughout. The heavy loops (nearest-center
assignment, per-cluster sums) live in the backend selected by
:mod:`subkmeans._backend`; everything here is orchestration.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _backend

logger = logging.getLogger(__name__)


class InvalidArgumentError(ValueError):
    """Raised when inputs violate an operation's preconditions."""


class DuplicateRowsWarning(UserWarning):
    """Fewer distinct rows than requested centers; duplicates were used."""


@dataclass
class ClusteringModel:
    centers: np.ndarray
    assignments: np.ndarray
    sse: float
    iterations_run: int
    n_distance_evals: int = 0
    empty_repairs: int = 0
    sse_trace: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.centers.shape[0]


def as_points(points, name="points") -> np.ndarray:
    """Validate and return a C-contiguous float64 ``(M, d)`` copy-or-view."""
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InvalidArgumentError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidArgumentError(f"{name} must have at least one row and one column")
    if not np.isfinite(arr).all():
        raise InvalidArgumentError(f"{name} contains NaN or infinite values")
    return arr


def _check_k(k, m):
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if k > m:
        raise InvalidArgumentError(f"k={k} exceeds the number of points M={m}")


def init_centers(points, k: int, rng_seed: int) -> np.ndarray:
    """Pick ``k`` distinct rows uniformly at random (seeded).

    If the data has fewer than ``k`` distinct rows, duplicates fill the
    remainder and a :class:`DuplicateRowsWarning` is emitted.
    """
    X = as_points(points)
    m = X.shape[0]
    _check_k(k, m)
    rng = np.random.default_rng(rng_seed)
    perm = rng.permutation(m)
    head = perm[:k]
    if np.unique(X[head], axis=0).shape[0] == k:
        return X[head].copy()

    seen = set()
    chosen, spare = [], []
    for idx in perm:
        key = X[idx].tobytes()
        if key in seen:
            spare.append(idx)
            continue
        seen.add(key)
        chosen.append(idx)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        msg = f"only {len(chosen)} distinct rows for k={k}; duplicating rows"
        warnings.warn(msg, DuplicateRowsWarning, stacklevel=2)
        logger.warning(msg)
        chosen.extend(spare[: k - len(chosen)])
    return X[np.asarray(chosen)].copy()


def _assign_with_dist(X, C):
    if C.ndim != 2 or C.shape[0] < 1:
        raise InvalidArgumentError("centers must be a non-empty 2-D array")
    if C.shape[1] != X.shape[1]:
        raise InvalidArgumentError(
            f"dimension mismatch: points have d={X.shape[1]}, centers d={C.shape[1]}"
        )
    labels = np.empty(X.shape[0], dtype=np.int64)
    mind = np.empty(X.shape[0], dtype=np.float64)
    _backend.kernels.assign_nearest(X, C, labels, mind)
    return labels, mind


def assign(points, centers) -> np.ndarray:
    """Index of the nearest center for every point (lowest index on ties)."""
    X = as_points(points)
    C = np.ascontiguousarray(centers, dtype=np.float64)
    if C.ndim == 1:
        C = C.reshape(-1, X.shape[1]) if X.shape[1] > 1 else C.reshape(-1, 1)
    return _assign_with_dist(X, C)[0]


def update_centers(points, assignments, k: int, prev_centers=None):
    """Recompute means; reseed empty clusters at the farthest points.

    Returns ``(centers, empty)`` where ``empty`` lists the cluster indices
    that had no members. Each empty cluster (in ascending order) takes the
    not-yet-used point with the largest squared distance to its previous
    center; without ``prev_centers`` the new means stand in for it.
    """
    X = as_points(points)
    labels = np.ascontiguousarray(assignments, dtype=np.int64)
    if labels.shape != (X.shape[0],):
        raise InvalidArgumentError("assignments must have one entry per point")
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if labels.min() < 0 or labels.max() >= k:
        raise InvalidArgumentError(f"assignment indices must lie in [0, {k})")
    if prev_centers is not None:
        prev_centers = np.ascontiguousarray(prev_centers, dtype=np.float64)
        if prev_centers.shape != (k, X.shape[1]):
            raise InvalidArgumentError("prev_centers must have shape (k, d)")
    return _update(X, labels, k, prev_centers)


def _update(X, labels, k, prev_centers):
    sums = np.zeros((k, X.shape[1]), dtype=np.float64)
    counts = np.zeros(k, dtype=np.int64)
    _backend.kernels.sum_by_label(X, labels, sums, counts)
    filled = counts > 0
    if filled.all():
        return sums / counts[:, None], []
    centers = np.zeros_like(sums)
    centers[filled] = sums[filled] / counts[filled, None]
    empty = np.flatnonzero(~filled).tolist()
    ref = centers if prev_centers is None else prev_centers
    far = np.empty(X.shape[0], dtype=np.float64)
    _backend.kernels.sq_dist_to_assigned(X, ref, labels, far)
    order = np.argsort(-far, kind="stable")
    for c, idx in zip(empty, order):
        centers[c] = X[idx]
    return centers, empty


def sse(points, centers) -> float:
    """Sum of squared distances from each point to its nearest center."""
    X = as_points(points)
    C = np.ascontiguousarray(centers, dtype=np.float64)
    return float(_assign_with_dist(X, C)[1].sum())


def lloyd(points, k: int, max_iters: int = 300, tol: float = 1e-4,
          rng_seed: int = 0, trace: bool = False) -> ClusteringModel:
    """Run Lloyd's algorithm from a seeded random-row initialization.

    Stops when no center moves farther than ``tol`` (Euclidean) or after
    ``max_iters`` assign/update rounds. With ``trace=True`` the SSE after
    every assignment step is kept in ``sse_trace`` and checked to be
    non-increasing.
    """
    X = as_points(points)
    m = X.shape[0]
    _check_k(k, m)
    if max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be >= 1, got {max_iters}")
    if tol < 0:
        raise InvalidArgumentError(f"tol must be nonnegative, got {tol}")

    return _lloyd(X, k, max_iters, tol, rng_seed, trace)


def _lloyd(X, k, max_iters, tol, rng_seed, trace=False):
    m = X.shape[0]
    centers = init_centers(X, k, rng_seed)
    evals = 0
    repairs = 0
    history = []
    it = 0
    for it in range(1, max_iters + 1):
        labels, mind = _assign_with_dist(X, centers)
        evals += m * k
        if trace:
            cur = float(mind.sum())
            if history:
                assert cur <= history[-1] * (1 + 1e-12), (
                    f"SSE rose from {history[-1]!r} to {cur!r} at iteration {it}")
            history.append(cur)
        new, empty = _update(X, labels, k, centers)
        repairs += len(empty)
        shift = np.sqrt(((new - centers) ** 2).sum(axis=1)).max()
        centers = new
        if shift <= tol:
            break

    labels, mind = _assign_with_dist(X, centers)
    evals += m * k
    total = float(mind.sum())
    if trace:
        assert not history or total <= history[-1] * (1 + 1e-12)
        history.append(total)
    return ClusteringModel(centers=centers, assignments=labels, sse=total,
                           iterations_run=it, n_distance_evals=evals,
                           empty_repairs=repairs, sse_trace=history)
