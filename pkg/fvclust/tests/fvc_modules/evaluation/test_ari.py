"""Tests for the adjusted Rand index."""
from __future__ import annotations

from math import comb

import numpy as np
import pytest
from returns.result import Failure

from fvclust.fvc_modules.evaluation.ari import adjusted_rand_index
from fvclust.fvc_modules.types import ClusterAssignment


def _planted(labels: list[int] | np.ndarray) -> ClusterAssignment:
    arr = np.asarray(labels)
    return ClusterAssignment(labels=arr, source="planted", m=int(arr.max()) + 1)


def _contingency_ari(a: np.ndarray, b: np.ndarray) -> float:
    pairs = sum(
        comb(int(np.sum((a == x) & (b == y))), 2)
        for x in np.unique(a)
        for y in np.unique(b)
    )
    rows = sum(comb(int(np.sum(a == x)), 2) for x in np.unique(a))
    cols = sum(comb(int(np.sum(b == y)), 2) for y in np.unique(b))
    expected = rows * cols / comb(a.size, 2)
    return (pairs - expected) / (0.5 * (rows + cols) - expected)


def test_identical_partitions() -> None:
    labels = [0, 0, 1, 1, 2, 2]
    assert adjusted_rand_index(_planted(labels), _planted(labels)).unwrap() == 1.0


def test_relabeled_partitions() -> None:
    a = _planted([0, 0, 1, 1, 2, 2])
    b = _planted([2, 2, 0, 0, 1, 1])
    assert adjusted_rand_index(a, b).unwrap() == pytest.approx(1.0)


def test_trivial_partition_scores_zero() -> None:
    a = _planted([0, 0, 0, 0, 0, 0])
    b = _planted([0, 0, 1, 1, 2, 2])
    assert adjusted_rand_index(a, b).unwrap() == pytest.approx(0.0)


def test_matches_contingency_formula(rng: np.random.Generator) -> None:
    for _ in range(10):
        a = rng.integers(0, 4, size=50)
        b = rng.integers(0, 3, size=50)
        value = adjusted_rand_index(_planted(a), _planted(b)).unwrap()
        assert value == pytest.approx(_contingency_ari(a, b), abs=1e-12)
        assert -1.0 <= value <= 1.0


def test_length_mismatch() -> None:
    result = adjusted_rand_index(_planted([0, 1]), _planted([0, 1, 1]))
    assert isinstance(result, Failure)
    err = result.failure()
    assert err.error_type == "LengthMismatch"
    assert err.context == {"left": 2, "right": 3}
