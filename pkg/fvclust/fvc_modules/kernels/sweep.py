"""Cosine angles of selected fiber pairs over a bandwidth grid."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.kernels.models import (
    PreparedFiber,
    prepare,
    prepared_cosine_angle,
)
from fvclust.fvc_modules.types import (
    DEFAULT_GAMMA,
    Fiber,
    KernelModel,
    KernelParams,
)


@dataclass(frozen=True)
class SweepRow:
    """One angle at one (lambda_w, lambda_m) grid point."""

    lambda_w: float
    lambda_m: float
    pair_id: str
    angle_deg: float


def sweep_angles(  # noqa: PLR0913
    fibers: Sequence[Fiber],
    model: KernelModel,
    lambda_ws: Sequence[float],
    lambda_ms: Sequence[float],
    pairs: Sequence[tuple[int, int]],
    gamma: float = DEFAULT_GAMMA,
) -> Result[list[SweepRow], FvcError]:
    """Rows ordered by lambda_w, then lambda_m, then pair."""
    for i, j in pairs:
        if not (0 <= i < len(fibers) and 0 <= j < len(fibers)):
            return Failure(
                FvcError(
                    operation="sweep_angles",
                    error_type="IndexOutOfRange",
                    message=f"Pair ({i}, {j}) outside 0..{len(fibers) - 1}",
                    context={"pair": [i, j], "n_fibers": len(fibers)},
                ),
            )

    prepared: dict[int, PreparedFiber] = {}
    for index in sorted({k for pair in pairs for k in pair}):
        result = prepare(fibers[index])
        if isinstance(result, Failure):
            return Failure(result.failure().with_context(fiber_index=index))
        prepared[index] = result.unwrap()

    rows: list[SweepRow] = []
    for lambda_w in lambda_ws:
        for lambda_m in lambda_ms:
            params = KernelParams(lambda_w=lambda_w, lambda_m=lambda_m, gamma=gamma)
            for i, j in pairs:
                angle = prepared_cosine_angle(
                    prepared[i], prepared[j], model, params,
                )
                if isinstance(angle, Failure):
                    return angle
                rows.append(
                    SweepRow(
                        lambda_w=lambda_w,
                        lambda_m=lambda_m,
                        pair_id=f"{i}-{j}",
                        angle_deg=angle.unwrap(),
                    ),
                )
    return Success(rows)
