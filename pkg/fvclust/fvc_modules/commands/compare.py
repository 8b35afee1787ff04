"""Compare and lambda-sweep commands -- clustering consistency per model."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult, IOSuccess

from fvclust.fvc_modules import io_ops
from fvclust.fvc_modules.commands._load import load_fibers
from fvclust.fvc_modules.evaluation.experiments import (
    ComparisonRow,
    LambdaRow,
    compare_models,
    lambda_m_silhouette,
)

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import Fiber, KernelModel, KernelParams


@dataclass(frozen=True)
class CompareCommandResult:
    """Rows of the comparison table plus the JSON rendering."""

    rows: tuple[ComparisonRow, ...]
    json_text: str


@dataclass(frozen=True)
class LambdaSweepCommandResult:
    rows: tuple[LambdaRow, ...]
    json_text: str


def comparison_json(rows: Sequence[ComparisonRow]) -> str:
    return json.dumps(
        [
            {
                "model": row.model.value,
                "m": row.m,
                "mean_silhouette": row.mean_silhouette,
                "std_silhouette": row.std_silhouette,
                "runs": row.runs,
            }
            for row in rows
        ],
        indent=2,
    ) + "\n"


def lambda_json(rows: Sequence[LambdaRow]) -> str:
    return json.dumps(
        [
            {
                "lambda_m": row.lambda_m,
                "m": row.m,
                "fvar_silhouette": row.fvar_silhouette,
                "var_silhouette": row.var_silhouette,
                "signal_silhouette": row.signal_silhouette,
            }
            for row in rows
        ],
        indent=2,
    ) + "\n"


def run_compare_command(  # noqa: PLR0913
    fibers_path: Path,
    models: Sequence[KernelModel],
    m_values: Sequence[int],
    seeds: Sequence[int],
    s_max: int,
    params: KernelParams,
    json_out: Path | None = None,
    *,
    sample: int | None = None,
    sample_seed: int = 0,
) -> IOResult[CompareCommandResult, FvcError]:
    """Cluster every model's Gram for every m and seed; mean silhouettes.

    sample restricts the run to a seeded subset of the fibers.
    """

    def _compare(fibers: list[Fiber]) -> IOResult[CompareCommandResult, FvcError]:
        return IOResult.from_result(
            compare_models(fibers, models, m_values, seeds, s_max, params),
        ).map(
            lambda rows: CompareCommandResult(
                rows=tuple(rows), json_text=comparison_json(rows),
            ),
        )

    def _emit(
        result: CompareCommandResult,
    ) -> IOResult[CompareCommandResult, FvcError]:
        if json_out is None:
            return IOSuccess(result)
        return io_ops.write_text(json_out, result.json_text).map(lambda _: result)

    return load_fibers(fibers_path, sample, sample_seed).bind(_compare).bind(_emit)


def run_lambda_sweep_command(  # noqa: PLR0913
    fibers_path: Path,
    lambda_ms: Sequence[float],
    m_values: Sequence[int],
    seeds: Sequence[int],
    params: KernelParams,
    *,
    sample: int | None = None,
    sample_seed: int = 0,
) -> IOResult[LambdaSweepCommandResult, FvcError]:
    """fVar, Var and signal-only mean silhouette per lambda_m and m."""
    return load_fibers(fibers_path, sample, sample_seed).bind(
        lambda fibers: IOResult.from_result(
            lambda_m_silhouette(fibers, lambda_ms, m_values, seeds, params),
        ),
    ).map(
        lambda rows: LambdaSweepCommandResult(
            rows=tuple(rows), json_text=lambda_json(rows),
        ),
    )
