"""Read-and-decode helpers shared by the commands."""
from __future__ import annotations

from typing import TYPE_CHECKING

from returns.io import IOResult

from fvclust.fvc_modules import formats, io_ops
from fvclust.fvc_modules.fibers.segment import subsample_fibers

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import (
        ClusterAssignment,
        Fiber,
        FitConfig,
        FitResult,
        GramMatrix,
    )


def load_fibers(
    path: Path,
    sample: int | None = None,
    sample_seed: int = 0,
) -> IOResult[list[Fiber], FvcError]:
    """Decoded fibers; with sample, a seeded subset kept in file order."""
    loaded = io_ops.read_text(path).bind(
        lambda text: IOResult.from_result(formats.decode_fibers(text)),
    ).alt(lambda err: err.with_context(path=str(path)))
    if sample is None:
        return loaded
    return loaded.map(
        lambda fibers: [
            fibers[k] for k in subsample_fibers(len(fibers), sample, sample_seed)
        ],
    )


def load_gram(path: Path) -> IOResult[GramMatrix, FvcError]:
    return io_ops.read_bytes(path).bind(
        lambda data: IOResult.from_result(formats.decode_gram(data)),
    ).alt(lambda err: err.with_context(path=str(path)))


def load_result(
    path: Path,
) -> IOResult[tuple[FitResult, ClusterAssignment, FitConfig], FvcError]:
    return io_ops.read_text(path).bind(
        lambda text: IOResult.from_result(formats.decode_result(text)),
    ).alt(lambda err: err.with_context(path=str(path)))


def load_labels(path: Path) -> IOResult[ClusterAssignment, FvcError]:
    return io_ops.read_text(path).bind(
        lambda text: IOResult.from_result(formats.decode_labels(text)),
    ).alt(lambda err: err.with_context(path=str(path)))
