"""Exact Gram matrix assembly.

Only the upper triangle is evaluated; the lower triangle is its mirror,
so Q is exactly symmetric whatever the summation order inside a kernel.
Rows may be evaluated on a thread pool: each entry is computed by
exactly one task, so the result does not depend on the worker count.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.kernels.models import PreparedFiber, pair_value, prepare
from fvclust.fvc_modules.types import (
    Fiber,
    FloatArray,
    GramMatrix,
    KernelModel,
    KernelParams,
)

logger = logging.getLogger(__name__)


def prepare_all(
    fibers: Sequence[Fiber],
    operation: str,
) -> Result[list[PreparedFiber], FvcError]:
    """Segment every fiber, tagging a failure with the offending index."""
    if not fibers:
        return Failure(
            FvcError(
                operation=operation,
                error_type="EmptyFiberSet",
                message="At least one fiber is required",
            ),
        )
    prepared: list[PreparedFiber] = []
    for index, fiber in enumerate(fibers):
        result = prepare(fiber)
        if isinstance(result, Failure):
            return Failure(
                result.failure().with_context(
                    fiber_index=index,
                    caller=operation,
                ),
            )
        prepared.append(result.unwrap())
    return Success(prepared)


def _upper_row(
    prepared: Sequence[PreparedFiber],
    i: int,
    model: KernelModel,
    params: KernelParams,
) -> FloatArray:
    row = np.empty(len(prepared) - i, dtype=np.float64)
    for offset, j in enumerate(range(i, len(prepared))):
        row[offset] = pair_value(prepared[i], prepared[j], model, params)
    return row


def assemble_gram(
    prepared: Sequence[PreparedFiber],
    model: KernelModel,
    params: KernelParams,
    workers: int = 1,
) -> FloatArray:
    """Q for already-segmented fibers (upper triangle, mirrored)."""
    n = len(prepared)
    values = np.zeros((n, n), dtype=np.float64)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(
                    lambda i: _upper_row(prepared, i, model, params),
                    range(n),
                ),
            )
    else:
        rows = [_upper_row(prepared, i, model, params) for i in range(n)]
    for i, row in enumerate(rows):
        values[i, i:] = row
    upper = np.triu(values, k=1)
    return values + upper.T


def compute_gram(
    fibers: Sequence[Fiber],
    model: KernelModel,
    params: KernelParams,
    workers: int = 1,
) -> Result[GramMatrix, FvcError]:
    """Pairwise kernel values of the chosen model for every fiber pair."""
    prepared = prepare_all(fibers, "compute_gram")
    if isinstance(prepared, Failure):
        return prepared
    values = assemble_gram(prepared.unwrap(), model, params, workers=workers)
    logger.debug(
        "Assembled %dx%d %s Gram matrix", len(fibers), len(fibers), model.value,
    )
    return Success(GramMatrix(values=values, model=model, params=params))
