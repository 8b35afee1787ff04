"""Tests for kernelized non-negative OMP."""
from __future__ import annotations

import itertools

import numpy as np
import pytest

from fvclust.fvc_modules.dictionary.komp import (
    komp,
    nnls_quadratic,
    sparse_code_all,
    sparse_code_one,
)
from fvclust.fvc_modules.dictionary.objective import fiber_residuals, objective
from fvclust.fvc_modules.types import Dictionary, GramMatrix, KernelModel, KernelParams
from fvclust.tests.conftest import random_psd_gram


def _unit_atoms(q: GramMatrix, a: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.sum(a * (q.values @ a), axis=0))
    return a / norms


def _subset_nnls(g: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact NNLS for tiny problems: best feasible unconstrained sub-solve."""
    k = b.shape[0]
    best = np.zeros(k)
    best_value = 0.0
    for size in range(1, k + 1):
        for subset in itertools.combinations(range(k), size):
            idx = list(subset)
            try:
                sol = np.linalg.solve(g[np.ix_(idx, idx)], b[idx])
            except np.linalg.LinAlgError:
                continue
            if np.any(sol < 0):
                continue
            w = np.zeros(k)
            w[idx] = sol
            value = 0.5 * w @ g @ w - b @ w
            if value < best_value:
                best, best_value = w, value
    return best


def _greedy_oracle(g: np.ndarray, corr: np.ndarray, s_max: int) -> np.ndarray:
    m = corr.shape[0]
    w = np.zeros(m)
    chosen: list[int] = []
    for _ in range(min(s_max, m)):
        scores = {
            j: corr[j] - g[j] @ w for j in range(m) if j not in chosen
        }
        j_best = max(scores, key=lambda j: scores[j])
        if scores[j_best] <= 1e-12:
            break
        chosen.append(j_best)
        w = np.zeros(m)
        w[chosen] = _subset_nnls(g[np.ix_(chosen, chosen)], corr[chosen])
    return w


def _term(q_ii: float, g: np.ndarray, corr: np.ndarray, w: np.ndarray) -> float:
    return q_ii + w @ g @ w - 2.0 * corr @ w


def _exhaustive_best(
    q_ii: float, g: np.ndarray, corr: np.ndarray, s_max: int,
) -> float:
    m = corr.shape[0]
    best = q_ii
    for size in range(1, s_max + 1):
        for subset in itertools.combinations(range(m), size):
            idx = list(subset)
            w = np.zeros(m)
            w[idx] = _subset_nnls(g[np.ix_(idx, idx)], corr[idx])
            best = min(best, _term(q_ii, g, corr, w))
    return best


def test_fiber_equal_to_unit_atom() -> None:
    """A fiber that is itself an atom is coded by that atom alone."""
    rng = np.random.default_rng(0)
    raw = random_psd_gram(rng, 6).values
    d = np.sqrt(np.diag(raw))
    q = GramMatrix(
        values=raw / np.outer(d, d),
        model=KernelModel.MCP_RBF,
        params=KernelParams(),
    )
    atoms = np.zeros((6, 3))
    atoms[[1, 3, 4], [0, 1, 2]] = 1.0
    a = Dictionary(atoms=atoms)
    w = sparse_code_one(q, a, 3, s_max=1)
    np.testing.assert_allclose(w, [0.0, 1.0, 0.0], atol=1e-12)
    codes = sparse_code_all(q, a, 1)
    assert fiber_residuals(q, a, codes)[3] == pytest.approx(0.0, abs=1e-12)


def test_no_positive_correlation_gives_zero_code() -> None:
    q = GramMatrix(
        values=np.array([[1.0, -0.5], [-0.5, 1.0]]),
        model=KernelModel.MCP_RBF,
        params=KernelParams(),
    )
    a = Dictionary(atoms=np.array([[0.0], [1.0]]))
    np.testing.assert_array_equal(sparse_code_one(q, a, 0, s_max=1), [0.0])


def test_matches_greedy_oracle_and_near_exhaustive_optimum() -> None:
    """Same choices as an independent greedy; >= 90% of the best reduction."""
    rng = np.random.default_rng(77)
    for _ in range(100):
        n = int(rng.integers(6, 13))
        m = int(rng.integers(2, 7))
        s_max = int(rng.integers(1, 3))
        q = random_psd_gram(rng, n, rank=4, nonnegative=True)
        atoms = _unit_atoms(q, rng.uniform(size=(n, m)))
        qa = q.values @ atoms
        g = atoms.T @ qa
        i = int(rng.integers(n))
        w = komp(g, qa[i], s_max)

        np.testing.assert_allclose(w, _greedy_oracle(g, qa[i], s_max), atol=1e-8)
        assert np.all(w >= 0)
        assert np.count_nonzero(w) <= s_max

        q_ii = float(q.values[i, i])
        greedy = _term(q_ii, g, qa[i], w)
        best = _exhaustive_best(q_ii, g, qa[i], s_max)
        assert q_ii - greedy >= 0.9 * (q_ii - best) - 1e-12


def test_sparse_code_all_columns_are_independent(rng: np.random.Generator) -> None:
    q = random_psd_gram(rng, 10, nonnegative=True)
    a = Dictionary(atoms=rng.uniform(size=(10, 3)))
    codes = sparse_code_all(q, a, s_max=2)
    for i in (0, 4, 9):
        np.testing.assert_allclose(
            codes.codes[:, i], sparse_code_one(q, a, i, s_max=2), rtol=1e-12,
        )
    assert codes.s_max == 2
    assert np.all(codes.nonzeros_per_column() <= 2)


def test_permuting_fibers_permutes_columns(rng: np.random.Generator) -> None:
    q = random_psd_gram(rng, 9, nonnegative=True)
    atoms = rng.uniform(size=(9, 3))
    perm = rng.permutation(9)
    q_perm = GramMatrix(
        values=q.values[np.ix_(perm, perm)], model=q.model, params=q.params,
    )
    codes = sparse_code_all(q, Dictionary(atoms=atoms), 2)
    permuted = sparse_code_all(q_perm, Dictionary(atoms=atoms[perm]), 2)
    np.testing.assert_allclose(permuted.codes, codes.codes[:, perm], rtol=1e-10)


def test_codes_never_worse_than_empty(rng: np.random.Generator) -> None:
    q = random_psd_gram(rng, 12)
    a = Dictionary(atoms=rng.uniform(size=(12, 4)))
    codes = sparse_code_all(q, a, 2)
    empty = 0.5 * float(np.trace(q.values))
    assert objective(q, a, codes).unwrap() <= empty + 1e-9


def test_identical_fibers_single_atom() -> None:
    q = GramMatrix(
        values=np.full((4, 4), 2.0),
        model=KernelModel.VARIFOLD,
        params=KernelParams(),
    )
    a = Dictionary(atoms=np.array([[1.0], [0.0], [0.0], [0.0]]))
    codes = sparse_code_all(q, a, 1)
    np.testing.assert_allclose(codes.codes, np.ones((1, 4)))


def test_nnls_quadratic_matches_subset_oracle(rng: np.random.Generator) -> None:
    for _ in range(20):
        x = rng.normal(size=(3, 3))
        g = x @ x.T + 0.1 * np.eye(3)
        b = rng.normal(size=3)
        np.testing.assert_allclose(nnls_quadratic(g, b), _subset_nnls(g, b), atol=1e-8)


def test_nnls_quadratic_zero_matrix() -> None:
    np.testing.assert_array_equal(
        nnls_quadratic(np.zeros((2, 2)), np.ones(2)), np.zeros(2),
    )
