"""Row-major and column-major flattening of point matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kmeans_core import InvalidArgumentError

ROW_MAJOR = "row_major"
COLUMN_MAJOR = "column_major"
_NUMPY_ORDER = {ROW_MAJOR: "C", COLUMN_MAJOR: "F"}


@dataclass(frozen=True)
class FlatBuffer:
    data: np.ndarray
    rows: int
    cols: int
    order: str


def _numpy_order(order):
    try:
        return _NUMPY_ORDER[order]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown order {order!r}; expected {ROW_MAJOR!r} or {COLUMN_MAJOR!r}"
        ) from None


def flatten(points, order: str = ROW_MAJOR) -> FlatBuffer:
    """Row-major puts a datum's attributes next to each other; column-major
    puts one attribute of every datum next to each other."""
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise InvalidArgumentError(f"expected a 2-D matrix, got shape {X.shape}")
    data = X.ravel(order=_numpy_order(order)).copy()
    return FlatBuffer(data=data, rows=X.shape[0], cols=X.shape[1], order=order)


def reconstruct(buffer: FlatBuffer) -> np.ndarray:
    npo = _numpy_order(buffer.order)
    data = np.asarray(buffer.data, dtype=np.float64)
    if data.ndim != 1 or data.size != buffer.rows * buffer.cols:
        raise InvalidArgumentError(
            f"buffer length {data.size} does not match {buffer.rows}x{buffer.cols}"
        )
    return np.ascontiguousarray(data.reshape((buffer.rows, buffer.cols), order=npo))


def gather_flat(points, parts, order: str = ROW_MAJOR) -> list[FlatBuffer]:
    """Flatten each partition straight from the source rows.

    Avoids building per-part 2-D copies first; each buffer is produced
    directly from the gathered index set.
    """
    X = np.asarray(points, dtype=np.float64)
    npo = _numpy_order(order)
    out = []
    for idx in parts:
        sub = X[idx] if npo == "C" else X[idx].T
        out.append(FlatBuffer(data=np.ascontiguousarray(sub).ravel(), rows=len(idx),
                              cols=X.shape[1], order=order))
    return out
