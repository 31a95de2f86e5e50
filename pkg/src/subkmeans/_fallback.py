"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Summation order mirrors the compiled loops (per-coordinate accumulation
starting from 0.0, points visited in row order) so both backends produce
the same bits.
"""

import numpy as np

# rows per block when materialising point-to-center distances
_BLOCK_ELEMS = 1 << 21


def _sq_dists(X, C):
    acc = (X[:, 0, None] - C[None, :, 0]) ** 2
    for j in range(1, X.shape[1]):
        acc = acc + (X[:, j, None] - C[None, :, j]) ** 2
    return acc


def assign_nearest(X, C, labels, mind):
    m, k = X.shape[0], C.shape[0]
    step = max(1, _BLOCK_ELEMS // max(k, 1))
    for lo in range(0, m, step):
        dist = _sq_dists(X[lo:lo + step], C)
        best = np.argmin(dist, axis=1)
        labels[lo:lo + step] = best
        mind[lo:lo + step] = dist[np.arange(dist.shape[0]), best]


def sum_by_label(X, labels, sums, counts):
    k = sums.shape[0]
    counts += np.bincount(labels, minlength=k)
    for j in range(X.shape[1]):
        sums[:, j] += np.bincount(labels, weights=X[:, j], minlength=k)


def sq_dist_to_assigned(X, C, labels, out):
    diff = X - C[labels]
    acc = diff[:, 0] ** 2
    for j in range(1, X.shape[1]):
        acc = acc + diff[:, j] ** 2
    out[:] = acc


def assign_on_segment(X, marks, L, H, labels):
    assign_nearest(X, marks, labels, np.empty(X.shape[0]))


def equal_rounds(X, s, size):
    m = X.shape[0]
    part = np.empty(m, dtype=np.int64)
    rem = np.arange(m, dtype=np.int64)
    for r in range(s):
        if rem.size == 0:
            break
        take = min(size, rem.size)
        if take == rem.size:
            part[rem] = r
            break
        sub = X[rem]
        corner = sub.min(axis=0)
        dist = (sub[:, 0] - corner[0]) ** 2
        for j in range(1, X.shape[1]):
            dist = dist + (sub[:, j] - corner[j]) ** 2
        # stable sort on distance keeps lower original index first on ties
        order = np.argsort(dist, kind="stable")
        chosen = np.zeros(rem.size, dtype=bool)
        chosen[order[:take]] = True
        part[rem[chosen]] = r
        rem = rem[~chosen]
    return part
