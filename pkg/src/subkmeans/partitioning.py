"""Landmark-based subclustering of scaled data.

Two schemes split the rows of a scaled matrix into disjoint parts:

``equal``
    Repeatedly take the ``ceil(M/s)`` remaining rows closest to the
    component-wise minimum of the remaining rows.
``unequal``
    Place ``s`` evenly spaced landmarks on the segment from the
    component-wise minimum to the component-wise maximum and group each
    row with its nearest landmark. Empty groups are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .kmeans_core import InvalidArgumentError, as_points

SCHEMES = ("equal", "unequal", "none")


@dataclass(frozen=True)
class Landmark:
    position: np.ndarray
    index: int


@dataclass
class PartitionSet:
    parts: list[np.ndarray]
    scheme: str
    dropped_empty: int = 0
    landmarks: list[Landmark] = field(default_factory=list)

    def __len__(self):
        return len(self.parts)

    @property
    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts]

    def labels(self, m: int) -> np.ndarray:
        """Part index per row; -1 for rows not covered (never, for valid sets)."""
        out = np.full(m, -1, dtype=np.int64)
        for i, idx in enumerate(self.parts):
            out[idx] = i
        return out


def _split_by_label(labels, count):
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(count + 1))
    return [order[bounds[i]:bounds[i + 1]] for i in range(count)]


def equal_partition(points, num_subclusters: int) -> PartitionSet:
    X = as_points(points)
    m = X.shape[0]
    s = int(num_subclusters)
    if s < 1 or s > m:
        raise InvalidArgumentError(f"num_subclusters must be in [1, M={m}], got {s}")
    size = -(-m // s)
    labels = _backend.kernels.equal_rounds(X, s, size)
    parts = [p for p in _split_by_label(labels, s) if p.size]
    # fixed-size rounds can run out of rows early (M=9, s=4 gives 3,3,3)
    return PartitionSet(parts=parts, scheme="equal", dropped_empty=s - len(parts))


def make_landmarks(low, high, count: int) -> list[Landmark]:
    """Evenly spaced points on the closed segment ``low``..``high``.

    ``count == 1`` gives the midpoint.
    """
    L = np.asarray(low, dtype=np.float64).ravel()
    H = np.asarray(high, dtype=np.float64).ravel()
    if L.shape != H.shape:
        raise InvalidArgumentError(f"dimension mismatch: {L.shape} vs {H.shape}")
    if count < 1:
        raise InvalidArgumentError(f"landmark count must be >= 1, got {count}")
    if count == 1:
        return [Landmark(position=(L + H) / 2, index=0)]
    return [Landmark(position=L + (i / (count - 1)) * (H - L), index=i) for i in range(count)]


def landmark_labels(points, num_subclusters: int):
    """Nearest-landmark index per row plus the landmarks used."""
    X = as_points(points)
    s = int(num_subclusters)
    if s < 1:
        raise InvalidArgumentError(f"num_subclusters must be >= 1, got {s}")
    low, high = X.min(axis=0), X.max(axis=0)
    marks = make_landmarks(low, high, s)
    grid = np.ascontiguousarray(np.stack([lm.position for lm in marks]))
    labels = np.empty(X.shape[0], dtype=np.int64)
    if s == 1:
        labels[:] = 0
    else:
        _backend.kernels.assign_on_segment(X, grid, low, high, labels)
    return labels, marks


def unequal_partition(points, num_subclusters: int) -> PartitionSet:
    labels, marks = landmark_labels(points, num_subclusters)
    groups = _split_by_label(labels, len(marks))
    parts = [p for p in groups if p.size]
    return PartitionSet(parts=parts, scheme="unequal",
                        dropped_empty=len(groups) - len(parts), landmarks=marks)


def partition(points, scheme: str, num_subclusters: int) -> PartitionSet:
    if scheme == "equal":
        return equal_partition(points, num_subclusters)
    if scheme == "unequal":
        return unequal_partition(points, num_subclusters)
    if scheme == "none":
        m = as_points(points).shape[0]
        return PartitionSet(parts=[np.arange(m)], scheme="none")
    raise InvalidArgumentError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
