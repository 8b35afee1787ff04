"""Reconstruction objective expressed through the Gram matrix.

For fiber i with code w_i the squared RKHS residual is
    Q(i,i) + w_i^T A^T Q A w_i - 2 Q(i,:) A w_i
and the objective is half the sum over fibers.
"""
from __future__ import annotations

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.types import (
    Dictionary,
    FloatArray,
    GramMatrix,
    SparseCodes,
)


def check_dimensions(
    q: GramMatrix,
    a: Dictionary,
    w: SparseCodes,
    operation: str = "objective",
) -> Result[None, FvcError]:
    """Q is n x n, A is n x m, W is m x n."""
    if a.n != q.n or w.n != q.n or w.m != a.m:
        return Failure(
            FvcError(
                operation=operation,
                error_type="DimensionMismatch",
                message=(
                    f"Q is {q.n}x{q.n}, A is {a.n}x{a.m},"
                    f" W is {w.m}x{w.n}"
                ),
                context={
                    "gram_n": q.n,
                    "atoms_shape": [a.n, a.m],
                    "codes_shape": [w.m, w.n],
                },
            ),
        )
    return Success(None)


def residual_terms(Q: FloatArray, A: FloatArray, W: FloatArray) -> FloatArray:
    """Per-fiber squared residuals (length n)."""
    QA = Q @ A
    G = A.T @ QA
    recon = np.sum(W * (G @ W), axis=0)
    cross = np.sum(QA * W.T, axis=1)
    return np.diag(Q) + recon - 2.0 * cross


def fiber_residuals(q: GramMatrix, a: Dictionary, w: SparseCodes) -> FloatArray:
    """Per-fiber squared reconstruction errors; dimensions must agree."""
    return residual_terms(
        np.asarray(q.values), np.asarray(a.atoms), np.asarray(w.codes),
    )


def objective(
    q: GramMatrix,
    a: Dictionary,
    w: SparseCodes,
) -> Result[float, FvcError]:
    """Half the summed squared RKHS reconstruction error."""
    checked = check_dimensions(q, a, w)
    if isinstance(checked, Failure):
        return checked
    return Success(0.5 * float(fiber_residuals(q, a, w).sum()))
