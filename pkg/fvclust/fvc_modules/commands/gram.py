"""Gram command -- fibers file in, binary Gram file out."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult

from fvclust.fvc_modules import formats, io_ops
from fvclust.fvc_modules.commands._load import load_fibers
from fvclust.fvc_modules.gram.assemble import compute_gram
from fvclust.fvc_modules.gram.distance import min_eigen_ratio
from fvclust.fvc_modules.gram.nystrom import nystrom_gram

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import (
        Fiber,
        GramMatrix,
        KernelModel,
        KernelParams,
    )

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GramCommandResult:
    """Output of fvc gram.

    min_eigen_ratio is None when Q has no positive eigenvalue.
    """

    gram_path: str
    model: str
    n: int
    approximate: bool
    min_eigen_ratio: float | None


def run_gram_command(  # noqa: PLR0913
    fibers_path: Path,
    gram_out: Path,
    model: KernelModel,
    params: KernelParams,
    *,
    workers: int = 1,
    landmarks: int | None = None,
    seed: int = 0,
) -> IOResult[GramCommandResult, FvcError]:
    """Exact Gram, or Nystrom with the given landmark count."""

    def _compute(fibers: list[Fiber]) -> IOResult[GramMatrix, FvcError]:
        if landmarks is None:
            return IOResult.from_result(
                compute_gram(fibers, model, params, workers=workers),
            )
        return IOResult.from_result(
            nystrom_gram(fibers, model, params, landmarks, seed),
        )

    def _write(q: GramMatrix) -> IOResult[GramCommandResult, FvcError]:
        ratio = min_eigen_ratio(q)
        if model.is_psd and ratio < -1e-8:  # noqa: PLR2004
            logger.warning(
                "%s Gram has min/max eigenvalue ratio %.3g", model.value, ratio,
            )
        return io_ops.write_bytes(gram_out, formats.encode_gram(q)).map(
            lambda _: GramCommandResult(
                gram_path=str(gram_out),
                model=model.value,
                n=q.n,
                approximate=q.approximate,
                min_eigen_ratio=ratio if math.isfinite(ratio) else None,
            ),
        )

    return load_fibers(fibers_path).bind(_compute).bind(_write)
