"""Min-max feature scaling.

After scaling, the per-attribute minimum point is the origin and the
per-attribute maximum point is the all-ones corner (zero for constant
attributes), which is what the landmark construction relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kmeans_core import InvalidArgumentError, as_points


@dataclass(frozen=True)
class ScalingParams:
    mins: np.ndarray
    maxs: np.ndarray

    @property
    def span(self) -> np.ndarray:
        return self.maxs - self.mins

    @property
    def degenerate(self) -> np.ndarray:
        return self.maxs == self.mins


def fit_minmax(points) -> ScalingParams:
    X = as_points(points)
    return ScalingParams(mins=X.min(axis=0), maxs=X.max(axis=0))


def _check_dims(X, params):
    if X.shape[1] != params.mins.shape[0]:
        raise InvalidArgumentError(
            f"dimension mismatch: data has d={X.shape[1]}, params fit on d={params.mins.shape[0]}"
        )


def transform(points, params: ScalingParams) -> np.ndarray:
    """Map each attribute to ``(x - min) / (max - min)``; constant attributes map to 0."""
    X = as_points(points)
    _check_dims(X, params)
    span = np.where(params.degenerate, 1.0, params.span)
    out = (X - params.mins) / span
    out[:, params.degenerate] = 0.0
    return np.ascontiguousarray(out)


def inverse_transform(points, params: ScalingParams) -> np.ndarray:
    X = as_points(points)
    _check_dims(X, params)
    out = X * params.span + params.mins
    out[:, params.degenerate] = params.mins[params.degenerate]
    return out
