"""Distances and diagnostics derived from a Gram matrix."""
from __future__ import annotations

import math

import numpy as np

from fvclust.fvc_modules.types import FloatArray, GramMatrix


def kernel_distance(q: GramMatrix, i: int, j: int) -> float:
    """sqrt(max(0, Q_ii + Q_jj - 2 Q_ij)); zero on the diagonal."""
    if i == j:
        return 0.0
    v = q.values
    return math.sqrt(max(0.0, v[i, i] + v[j, j] - 2.0 * v[i, j]))


def distance_matrix(q: GramMatrix) -> FloatArray:
    """All pairwise kernel distances, exactly symmetric with zero diagonal."""
    v = np.asarray(q.values)
    diag = np.diag(v)
    sq = diag[:, None] + diag[None, :] - 2.0 * v
    dist = np.sqrt(np.maximum(sq, 0.0))
    np.fill_diagonal(dist, 0.0)
    return dist


def min_eigen_ratio(q: GramMatrix) -> float:
    """lambda_min / lambda_max of Q; >= -1e-8 means PSD up to roundoff."""
    eigvals = np.linalg.eigvalsh(np.asarray(q.values))
    top = float(eigvals.max())
    if top <= 0:
        return -math.inf
    return float(eigvals.min()) / top
