"""Dataset loading and synthetic blob generation."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .kmeans_core import InvalidArgumentError

SEEDS_ENV = "SUBKMEANS_SEEDS_PATH"


class DataFormatError(ValueError):
    """A data file that cannot be parsed; the message names the line."""


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _read_rows(path, delimiter):
    with open(path, newline="") as fh:
        if delimiter is None:
            for lineno, line in enumerate(fh, start=1):
                yield lineno, line.split()
        else:
            for lineno, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1):
                yield lineno, [cell.strip() for cell in row]


def load_csv(path, has_header=None, label_column=None, delimiter=","):
    """Read a numeric table, optionally splitting off a label column.

    ``has_header=None`` treats the first row as a header when any of its
    feature cells is non-numeric. ``label_column`` may be negative
    (``-1`` is the last column). ``delimiter=None`` splits on runs of
    whitespace. Blank lines are skipped.

    Returns ``(features, labels)``; ``labels`` is ``None`` without a label
    column, else a list of strings.
    """
    rows = [(n, r) for n, r in _read_rows(path, delimiter) if any(cell for cell in r)]
    if not rows:
        raise DataFormatError(f"{path}: file is empty")

    width = len(rows[0][1])
    label_idx = None
    if label_column is not None:
        label_idx = label_column + width if label_column < 0 else label_column
        if not 0 <= label_idx < width:
            raise DataFormatError(
                f"{path}: label column {label_column} out of range for {width} columns"
            )
    feature_idx = [j for j in range(width) if j != label_idx]
    if not feature_idx:
        raise DataFormatError(f"{path}: no feature columns")

    first = rows[0][1]
    if has_header is None:
        has_header = not all(_is_number(first[j]) for j in feature_idx)
    if has_header:
        rows = rows[1:]
    if not rows:
        raise DataFormatError(f"{path}: no data rows after the header")

    values = np.empty((len(rows), len(feature_idx)), dtype=np.float64)
    labels = [] if label_idx is not None else None
    for i, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(
                f"{path}: line {lineno}: expected {width} fields, found {len(row)}"
            )
        for out_j, j in enumerate(feature_idx):
            try:
                values[i, out_j] = float(row[j])
            except ValueError:
                raise DataFormatError(
                    f"{path}: line {lineno}: column {j + 1}: cannot parse {row[j]!r} as a number"
                ) from None
        if labels is not None:
            labels.append(row[label_idx])
    if not np.isfinite(values).all():
        bad = int(np.argwhere(~np.isfinite(values))[0, 0])
        raise DataFormatError(f"{path}: line {rows[bad][0]}: non-finite value")
    return values, labels


def iris_path() -> Path:
    return Path(str(resources.files("subkmeans") / "data" / "iris.csv"))


def load_iris():
    """The 150-point, 4-attribute Iris table with species labels."""
    return load_csv(iris_path(), has_header=True, label_column=-1)


def seeds_path():
    """Location of the UCI wheat-seeds file, or ``None`` if it is not present.

    Checked in order: ``$SUBKMEANS_SEEDS_PATH``, then ``data/seeds_dataset.txt``
    inside the package.
    """
    env = os.environ.get(SEEDS_ENV)
    candidates = [Path(env)] if env else []
    candidates.append(Path(str(resources.files("subkmeans") / "data" / "seeds_dataset.txt")))
    for p in candidates:
        if p.is_file():
            return p
    return None


def load_seeds():
    """The 210-point, 7-attribute seeds table (whitespace separated, class last)."""
    path = seeds_path()
    if path is None:
        raise FileNotFoundError(
            "seeds_dataset.txt not found; download it from the UCI repository and set "
            f"${SEEDS_ENV} to its path"
        )
    return load_csv(path, has_header=False, label_column=-1, delimiter=None)


@dataclass(frozen=True)
class SyntheticSpec:
    total_points: int
    points_per_cluster: int = 500
    dims: int = 2
    cluster_std: float = 0.5
    box: tuple[float, float] = (0.0, 100.0)
    seed: int = 0

    @property
    def n_clusters(self) -> int:
        return self.total_points // self.points_per_cluster

    def validate(self):
        if self.points_per_cluster < 1 or self.total_points < 1:
            raise InvalidArgumentError("point counts must be positive")
        if self.total_points % self.points_per_cluster:
            raise InvalidArgumentError(
                f"total_points={self.total_points} is not a multiple of "
                f"points_per_cluster={self.points_per_cluster}"
            )
        if self.dims < 1:
            raise InvalidArgumentError(f"dims must be >= 1, got {self.dims}")
        if not self.cluster_std > 0:
            raise InvalidArgumentError(f"cluster_std must be positive, got {self.cluster_std}")
        if not self.box[0] < self.box[1]:
            raise InvalidArgumentError(f"box must satisfy low < high, got {self.box}")
        return self


def gen_synthetic(spec: SyntheticSpec):
    """Isotropic Gaussian blobs with centers uniform in ``box``.

    Returns ``(points, labels, centers)``; rows are shuffled, ``labels``
    gives each row's blob.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.box
    centers = rng.uniform(lo, hi, size=(spec.n_clusters, spec.dims))
    labels = np.repeat(np.arange(spec.n_clusters), spec.points_per_cluster)
    points = centers[labels] + rng.normal(0.0, spec.cluster_std, size=(spec.total_points, spec.dims))
    order = rng.permutation(spec.total_points)
    return np.ascontiguousarray(points[order]), labels[order], centers
