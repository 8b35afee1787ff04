"""Synth command -- write a synthetic fiber file and its planted labels."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult, IOSuccess

from fvclust.fvc_modules import formats, io_ops
from fvclust.fvc_modules.fibers.synthesize import synthesize
from fvclust.fvc_modules.types import ClusterAssignment

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import SyntheticBundleSpec


@dataclass(frozen=True)
class SynthCommandResult:
    """Output of fvc synth.

    labels_path is None when no labels file was requested.
    """

    fibers_path: str
    labels_path: str | None
    n_fibers: int
    n_bundles: int


def run_synth_command(
    spec: SyntheticBundleSpec,
    fibers_out: Path,
    labels_out: Path | None,
) -> IOResult[SynthCommandResult, FvcError]:
    """Synthesize fibers and write them, plus labels when asked."""
    planted = synthesize(spec)
    result = SynthCommandResult(
        fibers_path=str(fibers_out),
        labels_path=str(labels_out) if labels_out is not None else None,
        n_fibers=len(planted.fibers),
        n_bundles=spec.bundle_count,
    )
    written = io_ops.write_text(fibers_out, formats.encode_fibers(planted.fibers))
    if labels_out is None:
        return written.map(lambda _: result)
    labels = ClusterAssignment(
        labels=planted.labels, source="planted", m=spec.bundle_count,
    )

    def _write_labels(_: None) -> IOResult[SynthCommandResult, FvcError]:
        return io_ops.write_text(
            labels_out, formats.encode_labels(labels),
        ).bind(lambda _: IOSuccess(result))

    return written.bind(_write_labels)
