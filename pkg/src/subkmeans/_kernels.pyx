# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled inner loops.

Every routine here has a numpy twin in ``_fallback`` with the same
signature and the same floating-point summation order, so both backends
give bit-identical labels and sums.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport floor
from libcpp.vector cimport vector
from libcpp.algorithm cimport nth_element

cnp.import_array()


def assign_nearest(const double[:, ::1] X, const double[:, ::1] C,
                   cnp.int64_t[::1] labels, double[::1] mind):
    """Nearest center per row; strict ``<`` keeps the lowest index on ties."""
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1], k = C.shape[0]
    cdef Py_ssize_t i, j, c, best
    cdef double acc, diff, bestd
    with nogil:
        for i in range(m):
            best = 0
            bestd = 0.0
            for c in range(k):
                acc = 0.0
                for j in range(d):
                    diff = X[i, j] - C[c, j]
                    acc = acc + diff * diff
                if c == 0 or acc < bestd:
                    bestd = acc
                    best = c
            labels[i] = best
            mind[i] = bestd


def sum_by_label(const double[:, ::1] X, const cnp.int64_t[::1] labels,
                 double[:, ::1] sums, cnp.int64_t[::1] counts):
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, c
    with nogil:
        for i in range(m):
            c = labels[i]
            counts[c] += 1
            for j in range(d):
                sums[c, j] = sums[c, j] + X[i, j]


def sq_dist_to_assigned(const double[:, ::1] X, const double[:, ::1] C,
                        const cnp.int64_t[::1] labels, double[::1] out):
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, c
    cdef double acc, diff
    with nogil:
        for i in range(m):
            c = labels[i]
            acc = 0.0
            for j in range(d):
                diff = X[i, j] - C[c, j]
                acc = acc + diff * diff
            out[i] = acc


def assign_on_segment(const double[:, ::1] X, const double[:, ::1] marks,
                      const double[::1] L, const double[::1] H,
                      cnp.int64_t[::1] labels):
    """Nearest landmark when the landmarks are evenly spaced from L to H.

    The projection onto the segment picks a small candidate window; the
    final choice uses the same squared-distance arithmetic as
    ``assign_nearest`` so results match a brute-force scan.
    """
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1], g = marks.shape[0]
    cdef Py_ssize_t i, j, c, lo, hi, best, guess
    cdef double acc, diff, bestd, t, norm2 = 0.0
    for j in range(d):
        norm2 += (H[j] - L[j]) * (H[j] - L[j])
    with nogil:
        for i in range(m):
            if g == 1:
                labels[i] = 0
                continue
            if norm2 > 0.0:
                t = 0.0
                for j in range(d):
                    t = t + (X[i, j] - L[j]) * (H[j] - L[j])
                t = t / norm2 * (g - 1)
                if t < 0.0:
                    t = 0.0
                elif t > g - 1:
                    t = g - 1
                guess = <Py_ssize_t>floor(t + 0.5)
            else:
                guess = 0
            lo = guess - 2 if guess >= 2 else 0
            hi = guess + 2 if guess + 2 < g else g - 1
            best = lo
            bestd = 0.0
            for c in range(lo, hi + 1):
                acc = 0.0
                for j in range(d):
                    diff = X[i, j] - marks[c, j]
                    acc = acc + diff * diff
                if c == lo or acc < bestd:
                    bestd = acc
                    best = c
            labels[i] = best


def equal_rounds(const double[:, ::1] X, Py_ssize_t s, Py_ssize_t size):
    """Part id per row for min-corner gathering of ``size`` rows per round."""
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1]
    cdef cnp.int64_t[::1] part = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] rem = np.arange(m, dtype=np.int64)
    cdef double[::1] dist = np.empty(m, dtype=np.float64)
    cdef double[::1] corner = np.empty(d, dtype=np.float64)
    cdef vector[double] scratch
    cdef Py_ssize_t r, nrem = m, i, j, idx, take, nless, nties, w
    cdef double acc, diff, v
    scratch.reserve(m)
    with nogil:
        for r in range(s):
            if nrem == 0:
                break
            take = size if size < nrem else nrem
            for j in range(d):
                corner[j] = X[rem[0], j]
            for i in range(1, nrem):
                idx = rem[i]
                for j in range(d):
                    if X[idx, j] < corner[j]:
                        corner[j] = X[idx, j]
            scratch.clear()
            for i in range(nrem):
                idx = rem[i]
                acc = 0.0
                for j in range(d):
                    diff = X[idx, j] - corner[j]
                    acc = acc + diff * diff
                dist[i] = acc
                scratch.push_back(acc)
            if take < nrem:
                nth_element(scratch.begin(), scratch.begin() + (take - 1), scratch.end())
                v = scratch[take - 1]
                nless = 0
                for i in range(nrem):
                    if dist[i] < v:
                        nless += 1
                nties = take - nless
            else:
                v = 0.0
                nties = 0
            w = 0
            for i in range(nrem):
                idx = rem[i]
                if take == nrem or dist[i] < v:
                    part[idx] = r
                elif dist[i] == v and nties > 0:
                    part[idx] = r
                    nties -= 1
                else:
                    rem[w] = idx
                    w += 1
            nrem = w
    return np.asarray(part)
