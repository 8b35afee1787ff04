"""Tests for the Gram-expressed reconstruction objective."""
from __future__ import annotations

import numpy as np
import pytest
from returns.result import Failure

from fvclust.fvc_modules.dictionary.objective import fiber_residuals, objective
from fvclust.fvc_modules.types import Dictionary, GramMatrix, SparseCodes
from fvclust.tests.conftest import identity_gram, random_psd_gram


def _embedding_oracle(q: GramMatrix, a: np.ndarray, w: np.ndarray) -> float:
    """Materialise fibers as rows of a Cholesky factor and measure residuals."""
    phi = np.linalg.cholesky(q.values)
    atoms = phi.T @ a
    recon = atoms @ w
    return 0.5 * float(np.sum((phi.T - recon) ** 2))


def test_zero_codes_give_half_trace(rng: np.random.Generator) -> None:
    q = random_psd_gram(rng, 6)
    a = Dictionary(atoms=rng.uniform(size=(6, 3)))
    w = SparseCodes(codes=np.zeros((3, 6)), s_max=1)
    assert objective(q, a, w).unwrap() == pytest.approx(0.5 * np.trace(q.values))


def test_perfect_reconstruction() -> None:
    q = identity_gram(4)
    a = Dictionary(atoms=np.eye(4))
    w = SparseCodes(codes=np.eye(4), s_max=1)
    assert objective(q, a, w).unwrap() == 0.0


def test_matches_cholesky_embedding_oracle() -> None:
    rng = np.random.default_rng(2024)
    for _ in range(50):
        n = int(rng.integers(2, 31))
        m = int(rng.integers(1, min(n, 8) + 1))
        q = random_psd_gram(rng, n)
        a = rng.uniform(size=(n, m))
        w = rng.uniform(size=(m, n)) * (rng.uniform(size=(m, n)) < 0.4)
        value = objective(
            q, Dictionary(atoms=a), SparseCodes(codes=w, s_max=m),
        ).unwrap()
        assert value == pytest.approx(_embedding_oracle(q, a, w), rel=1e-8)
        assert value >= -1e-9


def test_fiber_residuals_sum_to_twice_objective(rng: np.random.Generator) -> None:
    q = random_psd_gram(rng, 7)
    a = Dictionary(atoms=rng.uniform(size=(7, 2)))
    w = SparseCodes(codes=rng.uniform(size=(2, 7)), s_max=2)
    residuals = fiber_residuals(q, a, w)
    assert residuals.shape == (7,)
    assert residuals.sum() == pytest.approx(2.0 * objective(q, a, w).unwrap())


@pytest.mark.parametrize(
    ("atoms_shape", "codes_shape"),
    [((5, 2), (2, 4)), ((4, 2), (2, 4)), ((5, 2), (3, 5))],
)
def test_dimension_mismatch(
    rng: np.random.Generator,
    atoms_shape: tuple[int, int],
    codes_shape: tuple[int, int],
) -> None:
    q = random_psd_gram(rng, 5)
    result = objective(
        q,
        Dictionary(atoms=np.ones(atoms_shape)),
        SparseCodes(codes=np.ones(codes_shape), s_max=1),
    )
    assert isinstance(result, Failure)
    assert result.failure().error_type == "DimensionMismatch"
