import csv

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from subkmeans import InvalidArgumentError, fit_minmax, inverse_transform, transform
from subkmeans.datasets import iris_path
from subkmeans.preprocessing import ScalingParams

from oracles import column_extrema


def test_fit_column():
    p = fit_minmax([[2.0], [4.0], [6.0]])
    assert p.mins.tolist() == [2.0] and p.maxs.tolist() == [6.0]


def test_fit_single_point():
    p = fit_minmax([[1.5, -2.0, 3.0]])
    assert p.mins.tolist() == p.maxs.tolist() == [1.5, -2.0, 3.0]


def test_fit_iris_matches_scan():
    with open(iris_path()) as fh:
        rows = [tuple(float(v) for v in r[:4]) for r in list(csv.reader(fh))[1:]]
    mins, maxs = column_extrema(rows)
    p = fit_minmax(np.array(rows))
    assert p.mins.tolist() == mins and p.maxs.tolist() == maxs
    assert mins == [4.3, 2.0, 1.0, 0.1] and maxs == [7.9, 4.4, 6.9, 2.5]


def test_transform_values():
    X = [[2.0], [4.0], [6.0]]
    assert transform(X, fit_minmax(X)).ravel().tolist() == [0.0, 0.5, 1.0]


def test_constant_column_maps_to_zero():
    X = [[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]]
    out = transform(X, fit_minmax(X))
    assert out[:, 0].tolist() == [0.0, 0.0, 0.0]


def test_extrapolation():
    p = ScalingParams(mins=np.array([2.0]), maxs=np.array([6.0]))
    assert transform([[8.0]], p)[0, 0] == 1.5


def test_inverse_values():
    p = ScalingParams(mins=np.array([2.0]), maxs=np.array([6.0]))
    assert inverse_transform([[0.0], [0.5], [1.0]], p).ravel().tolist() == [2.0, 4.0, 6.0]


def test_inverse_degenerate():
    p = ScalingParams(mins=np.array([5.0, 0.0]), maxs=np.array([5.0, 1.0]))
    out = inverse_transform([[0.3, 0.5], [0.9, 1.0]], p)
    assert out[:, 0].tolist() == [5.0, 5.0]


def test_dimension_mismatch():
    p = fit_minmax(np.zeros((3, 2)))
    with pytest.raises(InvalidArgumentError):
        transform(np.zeros((3, 3)), p)
    with pytest.raises(InvalidArgumentError):
        inverse_transform(np.zeros((3, 1)), p)


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 30), st.integers(1, 5)),
              elements=st.floats(-1e6, 1e6)))
def test_scaled_columns_in_unit_interval(X):
    p = fit_minmax(X)
    Z = transform(X, p)
    assert (Z >= 0).all() and (Z <= 1).all()
    assert (Z[:, p.degenerate] == 0).all()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 50), st.integers(1, 6))
def test_round_trip(seed, m, d):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-100, 100, (m, d)) * rng.uniform(0.01, 10, d)
    p = fit_minmax(X)
    back = inverse_transform(transform(X, p), p)
    ok = ~p.degenerate
    scale = np.maximum(1.0, np.abs(X[:, ok]))
    assert (np.abs(back[:, ok] - X[:, ok]) <= 1e-12 * scale).all()
