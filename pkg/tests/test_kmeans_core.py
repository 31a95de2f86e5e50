import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from subkmeans import (
    DuplicateRowsWarning,
    InvalidArgumentError,
    assign,
    init_centers,
    lloyd,
    sse,
    update_centers,
)

from oracles import brute_nearest


def best_two_partition_sse(values):
    """Enumerate every split of a 1-D set into two non-empty groups."""
    values = list(values)
    best = None
    for mask in itertools.product([0, 1], repeat=len(values)):
        if 0 not in mask or 1 not in mask:
            continue
        total = 0.0
        for g in (0, 1):
            grp = [v for v, m in zip(values, mask) if m == g]
            mu = sum(grp) / len(grp)
            total += sum((v - mu) ** 2 for v in grp)
        best = total if best is None else min(best, total)
    return best


class TestInitCenters:
    def test_k_equals_m_returns_all_rows(self):
        X = np.array([[0.0, 1.0], [2.0, 3.0], [4.0, 5.0], [6.0, 7.0]])
        C = init_centers(X, 4, rng_seed=3)
        assert sorted(map(tuple, C)) == sorted(map(tuple, X))

    def test_deterministic(self):
        X = np.random.default_rng(0).random((30, 3))
        assert np.array_equal(init_centers(X, 1, 7), init_centers(X, 1, 7))

    def test_distinct_member_rows(self):
        X = np.random.default_rng(1).random((10, 2))
        C = init_centers(X, 3, 42)
        rows = {tuple(r) for r in X}
        assert all(tuple(c) in rows for c in C)
        assert len({tuple(c) for c in C}) == 3

    def test_skips_duplicates(self):
        X = np.array([[0.0], [0.0], [0.0], [1.0], [2.0]])
        for seed in range(20):
            C = init_centers(X, 3, seed)
            assert sorted(C.ravel()) == [0.0, 1.0, 2.0]

    def test_too_few_distinct_rows_warns(self):
        X = np.array([[1.0], [1.0], [2.0]])
        with pytest.warns(DuplicateRowsWarning):
            C = init_centers(X, 3, 0)
        assert C.shape == (3, 1)

    @pytest.mark.parametrize("k", [0, 5])
    def test_bad_k(self, k):
        with pytest.raises(InvalidArgumentError):
            init_centers(np.zeros((4, 2)), k, 0)


class TestAssign:
    def test_simple(self, backend):
        assert assign([[0.0], [10.0]], [[0.0], [10.0]]).tolist() == [0, 1]

    def test_tie_goes_low(self, backend):
        assert assign([[5.0]], [[0.0], [10.0]]).tolist() == [0]
        # four equidistant centers around the origin
        C = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
        assert assign([[0.0, 0.0]], C).tolist() == [0]
        assert assign([[0.0, 0.0]], C[::-1]).tolist() == [0]

    def test_matches_brute_force(self, backend, rng):
        X = rng.random((20, 2))
        C = rng.random((3, 2))
        assert np.array_equal(assign(X, C), brute_nearest(X, C))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 200), st.integers(1, 12), st.integers(1, 5), st.integers(0, 2**32 - 1))
    def test_property_brute_force(self, m, k, d, seed):
        rng = np.random.default_rng(seed)
        # coarse grid values create many exact ties
        X = rng.integers(0, 4, (m, d)).astype(float)
        C = rng.integers(0, 4, (k, d)).astype(float)
        assert np.array_equal(assign(X, C), brute_nearest(X, C))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            assign(np.zeros((3, 2)), np.zeros((2, 3)))


class TestUpdateCenters:
    def test_mean(self, backend):
        C, empty = update_centers([[0.0], [2.0]], [0, 0], 1)
        assert C.tolist() == [[1.0]] and empty == []

    def test_two_means(self, backend):
        C, _ = update_centers([[0.0], [1.0], [9.0], [10.0]], [0, 0, 1, 1], 2)
        assert C.ravel().tolist() == [0.5, 9.5]

    def test_empty_cluster_reseeded_at_farthest(self, backend):
        X = [[0.0], [1.0], [2.0], [10.0]]
        C, empty = update_centers(X, [0, 0, 0, 0], 2, prev_centers=[[0.0], [50.0]])
        assert empty == [1]
        assert C[1, 0] == 10.0
        assert C[0, 0] == pytest.approx(3.25)

    def test_several_empty_take_distinct_points(self, backend):
        X = [[0.0], [1.0], [5.0], [9.0]]
        C, empty = update_centers(X, [0, 0, 0, 0], 3)
        assert empty == [1, 2]
        # mean is 3.75; farthest are 9 (5.25) then 0 (3.75)
        assert C[1, 0] == 9.0 and C[2, 0] == 0.0

    def test_bad_assignment(self):
        with pytest.raises(InvalidArgumentError):
            update_centers([[0.0], [1.0]], [0, 2], 2)


class TestLloyd:
    def test_four_points_global_optimum(self, backend):
        pts = [0.0, 1.0, 9.0, 10.0]
        assert best_two_partition_sse(pts) == 1.0
        for seed in range(10):
            model = lloyd(np.array(pts)[:, None], 2, rng_seed=seed)
            assert sorted(model.centers.ravel()) == [0.5, 9.5]
            assert model.sse == best_two_partition_sse(pts)

    def test_k_equals_m(self, backend, rng):
        X = rng.random((15, 3))
        assert lloyd(X, 15, rng_seed=1).sse == 0.0

    def test_k_one_is_mean(self, backend, rng):
        X = rng.random((40, 3))
        model = lloyd(X, 1, rng_seed=5)
        np.testing.assert_allclose(model.centers[0], X.mean(axis=0), atol=1e-9)
        assert model.sse == pytest.approx(((X - X.mean(axis=0)) ** 2).sum(), rel=1e-12)

    def test_deterministic_bitwise(self, backend, rng):
        X = rng.random((300, 2))
        a = lloyd(X, 7, rng_seed=11)
        b = lloyd(X, 7, rng_seed=11)
        assert np.array_equal(a.centers, b.centers)
        assert np.array_equal(a.assignments, b.assignments)
        assert a.sse == b.sse

    def test_model_invariants(self, backend, rng):
        X = rng.random((200, 3))
        model = lloyd(X, 6, rng_seed=2)
        assert model.assignments.min() >= 0 and model.assignments.max() < 6
        recomputed = ((X - model.centers[model.assignments]) ** 2).sum()
        assert model.sse == pytest.approx(recomputed, rel=1e-9)
        assert model.sse == pytest.approx(sse(X, model.centers), rel=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 150), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_sse_trace_non_increasing(self, m, d, seed):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(m, d))
        k = int(rng.integers(1, m + 1))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DuplicateRowsWarning)
            model = lloyd(X, k, rng_seed=seed, trace=True)
        trace = model.sse_trace
        assert all(b <= a * (1 + 1e-12) for a, b in zip(trace, trace[1:]))

    def test_max_iters_respected(self, rng):
        X = rng.random((500, 2))
        assert lloyd(X, 20, max_iters=2, tol=0.0, rng_seed=0).iterations_run <= 2

    def test_distance_counter(self, rng):
        X = rng.random((100, 2))
        model = lloyd(X, 4, max_iters=3, tol=0.0, rng_seed=0)
        assert model.n_distance_evals == (model.iterations_run + 1) * 100 * 4

    @pytest.mark.parametrize("kwargs", [{"k": 0}, {"k": 11}, {"k": 2, "max_iters": 0}, {"k": 2, "tol": -1.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            lloyd(np.zeros((10, 2)), **kwargs)


class TestSSE:
    def test_values(self):
        assert sse([[0.0], [2.0]], [[1.0]]) == 2.0
        X = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert sse(X, X) == 0.0

    def test_empty_centers(self):
        with pytest.raises(InvalidArgumentError):
            sse([[0.0]], np.zeros((0, 1)))

    def test_rejects_nan(self):
        with pytest.raises(InvalidArgumentError):
            sse([[np.nan]], [[0.0]])


@given(arrays(np.float64, (12, 2), elements=st.floats(-1e3, 1e3)))
@settings(max_examples=50, deadline=None)
def test_lloyd_assignments_are_nearest(X):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DuplicateRowsWarning)
        model = lloyd(X, 3, rng_seed=0)
    assert np.array_equal(model.assignments, brute_nearest(X, model.centers))
