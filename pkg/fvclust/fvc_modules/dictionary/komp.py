"""Kernelized orthogonal matching pursuit with non-negative weights.

Greedy: pick the unselected atom with the largest strictly positive
residual correlation (Q(i,:)A - w^T A^T Q A)_j, then re-solve the
non-negative regression on the support. Stops at s_max atoms or when
no atom is positively correlated.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import nnls

from fvclust.fvc_modules.types import (
    Dictionary,
    FloatArray,
    GramMatrix,
    SparseCodes,
)

CORRELATION_TOLERANCE = 1e-12
EIGEN_FLOOR = 1e-12


def nnls_quadratic(G: FloatArray, b: FloatArray) -> FloatArray:
    """argmin_{w >= 0} 1/2 w^T G w - b^T w, for small PSD G.

    Rewritten as the least-squares problem ||M w - t|| with
    M^T M = G and M^T t = b, then handed to the Lawson-Hanson solver.
    """
    eigvals, eigvecs = np.linalg.eigh(0.5 * (G + G.T))
    top = float(eigvals.max()) if eigvals.size else 0.0
    if top <= 0:
        return np.zeros(b.shape[0], dtype=np.float64)
    keep = eigvals > EIGEN_FLOOR * top
    roots = np.sqrt(eigvals[keep])
    basis = eigvecs[:, keep]
    M = roots[:, None] * basis.T
    t = (basis.T @ b) / roots
    weights, _ = nnls(M, t)
    return np.maximum(weights, 0.0)


def komp(atom_gram: FloatArray, correlations: FloatArray, s_max: int) -> FloatArray:
    """Sparse non-negative code for one fiber.

    atom_gram is A^T Q A (m x m), correlations is Q(i,:) A (length m).
    """
    m = correlations.shape[0]
    w = np.zeros(m, dtype=np.float64)
    support: list[int] = []
    while len(support) < min(s_max, m):
        residual_corr = correlations - atom_gram @ w
        residual_corr[support] = -np.inf
        best = int(np.argmax(residual_corr))
        if residual_corr[best] <= CORRELATION_TOLERANCE:
            break
        support.append(best)
        idx = np.asarray(support)
        w = np.zeros(m, dtype=np.float64)
        w[idx] = nnls_quadratic(atom_gram[np.ix_(idx, idx)], correlations[idx])
    return w


def sparse_code_one(
    q: GramMatrix,
    a: Dictionary,
    i: int,
    s_max: int,
) -> FloatArray:
    """Code column for fiber i against dictionary a."""
    QA = np.asarray(q.values) @ np.asarray(a.atoms)
    G = np.asarray(a.atoms).T @ QA
    return komp(G, QA[i], s_max)


def sparse_code_all(q: GramMatrix, a: Dictionary, s_max: int) -> SparseCodes:
    """Code every fiber independently; column i depends on fiber i only."""
    A = np.asarray(a.atoms)
    QA = np.asarray(q.values) @ A
    G = A.T @ QA
    codes = np.zeros((a.m, q.n), dtype=np.float64)
    for i in range(q.n):
        codes[:, i] = komp(G, QA[i], s_max)
    return SparseCodes(codes=codes, s_max=s_max)
