"""Sweep command -- cosine-angle CSV over a lambda_w x lambda_m grid."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult, IOSuccess

from fvclust.fvc_modules import formats, io_ops
from fvclust.fvc_modules.commands._load import load_fibers
from fvclust.fvc_modules.kernels.sweep import sweep_angles

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.kernels.sweep import SweepRow
    from fvclust.fvc_modules.types import Fiber, KernelModel


@dataclass(frozen=True)
class SweepCommandResult:
    """Output of fvc sweep; csv_path is None when printed to stdout."""

    csv_text: str
    rows: int
    csv_path: str | None


def run_sweep_command(  # noqa: PLR0913
    fibers_path: Path,
    model: KernelModel,
    lambda_ws: Sequence[float],
    lambda_ms: Sequence[float],
    pairs: Sequence[tuple[int, int]],
    gamma: float,
    csv_out: Path | None = None,
) -> IOResult[SweepCommandResult, FvcError]:
    def _sweep(fibers: list[Fiber]) -> IOResult[list[SweepRow], FvcError]:
        return IOResult.from_result(
            sweep_angles(fibers, model, lambda_ws, lambda_ms, pairs, gamma),
        )

    def _emit(rows: list[SweepRow]) -> IOResult[SweepCommandResult, FvcError]:
        text = formats.encode_sweep(rows)
        result = SweepCommandResult(
            csv_text=text,
            rows=len(rows),
            csv_path=str(csv_out) if csv_out is not None else None,
        )
        if csv_out is None:
            return IOSuccess(result)
        return io_ops.write_text(csv_out, text).map(lambda _: result)

    return load_fibers(fibers_path).bind(_sweep).bind(_emit)
