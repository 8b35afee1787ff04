"""Initial atoms: one-hot columns on distinct, seeded fiber indices.

Without a Gram matrix the indices are a uniform draw. With one, they
follow k-means++ seeding in the kernel-induced distance: each new
index is drawn with probability proportional to its squared distance
to the nearest index already chosen.
"""
from __future__ import annotations

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.types import Dictionary, GramMatrix, IntArray


def _kmeans_pp_indices(
    q: GramMatrix,
    m: int,
    rng: np.random.Generator,
) -> IntArray:
    Q = np.asarray(q.values)
    n = q.n
    diag = np.diag(Q)
    chosen = [int(rng.integers(n))]
    nearest = np.full(n, np.inf)
    while len(chosen) < m:
        last = chosen[-1]
        sq = np.maximum(diag + diag[last] - 2.0 * Q[:, last], 0.0)
        nearest = np.minimum(nearest, sq)
        weights = nearest.copy()
        weights[chosen] = 0.0
        total = float(weights.sum())
        if total <= 0:
            weights = np.ones(n)
            weights[chosen] = 0.0
            total = float(weights.sum())
        chosen.append(int(rng.choice(n, p=weights / total)))
    return np.asarray(chosen, dtype=np.int64)


def init_atoms(
    n: int,
    m: int,
    seed: int,
    q: GramMatrix | None = None,
) -> Result[Dictionary, FvcError]:
    """n x m dictionary whose atoms are m distinct single fibers."""
    if m > n:
        return Failure(
            FvcError(
                operation="init_atoms",
                error_type="MoreAtomsThanFibers",
                message=f"Cannot draw {m} distinct atoms from {n} fibers",
                context={"n": n, "m": m},
            ),
        )
    rng = np.random.default_rng(seed)
    if q is None:
        indices = rng.choice(n, size=m, replace=False)
    else:
        indices = _kmeans_pp_indices(q, m, rng)
    atoms = np.zeros((n, m), dtype=np.float64)
    atoms[indices, np.arange(m)] = 1.0
    return Success(Dictionary(atoms=atoms))
