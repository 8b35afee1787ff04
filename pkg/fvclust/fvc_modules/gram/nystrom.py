"""Nystrom low-rank Gram approximation.

Q_hat = C K_LL^+ C^T, with L a seeded uniform landmark sample, C the
n x |L| cross-kernel block and K_LL^+ a pseudoinverse that drops
eigenvalues below EIGEN_CUTOFF * lambda_max.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.gram.assemble import prepare_all
from fvclust.fvc_modules.kernels.models import pair_value
from fvclust.fvc_modules.types import (
    Fiber,
    FloatArray,
    GramMatrix,
    IntArray,
    KernelModel,
    KernelParams,
)

logger = logging.getLogger(__name__)

EIGEN_CUTOFF = 1e-10


def sample_landmarks(n: int, landmarks: int, seed: int) -> IntArray:
    """Sorted uniform sample of landmark indices, without replacement."""
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(n, size=landmarks, replace=False)).astype(np.int64)


def low_rank_factor(
    cross: FloatArray,
    landmark_block: FloatArray,
) -> Result[FloatArray, FvcError]:
    """F with F F^T = C K_LL^+ C^T, using the eigenvalue cutoff."""
    block = 0.5 * (landmark_block + landmark_block.T)
    eigvals, eigvecs = np.linalg.eigh(block)
    top = float(eigvals.max())
    if top > 0:
        keep = eigvals > EIGEN_CUTOFF * top
    else:
        keep = np.zeros(eigvals.shape, dtype=bool)
    if not np.any(keep):
        return Failure(
            FvcError(
                operation="nystrom_gram",
                error_type="SingularLandmarkBlock",
                message="Every landmark-block eigenvalue is below the cutoff",
                context={"lambda_max": top, "cutoff": EIGEN_CUTOFF},
            ),
        )
    dropped = int(keep.size - np.count_nonzero(keep))
    if dropped:
        logger.debug("Nystrom pseudoinverse dropped %d eigenvalue(s)", dropped)
    basis = eigvecs[:, keep] / np.sqrt(eigvals[keep])
    return Success(cross @ basis)


def nystrom_gram(  # noqa: PLR0913
    fibers: Sequence[Fiber],
    model: KernelModel,
    params: KernelParams,
    landmarks: int,
    seed: int,
) -> Result[GramMatrix, FvcError]:
    """Approximate Gram matrix from a landmark subset of the fibers."""
    n = len(fibers)
    if not 1 <= landmarks <= n:
        return Failure(
            FvcError(
                operation="nystrom_gram",
                error_type="InvalidLandmarkCount",
                message=f"landmarks must be in [1, {n}], got {landmarks}",
                context={"landmarks": landmarks, "n": n},
            ),
        )
    prepared = prepare_all(fibers, "nystrom_gram")
    if isinstance(prepared, Failure):
        return prepared
    items = prepared.unwrap()

    chosen = sample_landmarks(n, landmarks, seed)
    cross = np.empty((n, landmarks), dtype=np.float64)
    for i, fiber in enumerate(items):
        for col, j in enumerate(chosen):
            cross[i, col] = pair_value(fiber, items[int(j)], model, params)

    factor = low_rank_factor(cross, cross[chosen])
    if isinstance(factor, Failure):
        return factor
    f = factor.unwrap()
    approx = f @ f.T
    values = 0.5 * (approx + approx.T)
    return Success(
        GramMatrix(values=values, model=model, params=params, approximate=True),
    )
