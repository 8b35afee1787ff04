"""Model dispatch: one entry point for all four comparison models."""
from __future__ import annotations

import math
from dataclasses import dataclass

from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.fibers.segment import segment
from fvclust.fvc_modules.kernels.mcp import mcp_rbf
from fvclust.fvc_modules.kernels.varifold import fvar_inner, signal_inner, var_inner
from fvclust.fvc_modules.types import Fiber, KernelModel, KernelParams, SegmentedFiber

ZERO_NORM_TOLERANCE = 1e-15


@dataclass(frozen=True, eq=False)
class PreparedFiber:
    """A fiber with its segment decomposition computed once."""

    fiber: Fiber
    segmented: SegmentedFiber


def prepare(fiber: Fiber) -> Result[PreparedFiber, FvcError]:
    """Segment a fiber for repeated kernel evaluation."""
    return segment(fiber).map(
        lambda seg: PreparedFiber(fiber=fiber, segmented=seg),
    )


def pair_value(
    a: PreparedFiber,
    b: PreparedFiber,
    model: KernelModel,
    params: KernelParams,
) -> float:
    """Kernel value of the chosen model for one fiber pair."""
    if model is KernelModel.FUNCTIONAL_VARIFOLD:
        return fvar_inner(a.segmented, b.segmented, params)
    if model is KernelModel.VARIFOLD:
        return var_inner(a.segmented, b.segmented, params)
    if model is KernelModel.SIGNAL_ONLY:
        return signal_inner(a.segmented, b.segmented, params)
    return mcp_rbf(a.fiber, b.fiber, params)


def inner(
    a: Fiber,
    b: Fiber,
    model: KernelModel,
    params: KernelParams,
) -> Result[float, FvcError]:
    """Kernel value for raw fibers; fails if either cannot be segmented."""
    return prepare(a).bind(
        lambda pa: prepare(b).map(
            lambda pb: pair_value(pa, pb, model, params),
        ),
    )


def cosine_angle(
    a: Fiber,
    b: Fiber,
    model: KernelModel,
    params: KernelParams,
) -> Result[float, FvcError]:
    """Angle in degrees between two fibers in the model's feature space."""
    prepared_a = prepare(a)
    if isinstance(prepared_a, Failure):
        return prepared_a
    prepared_b = prepare(b)
    if isinstance(prepared_b, Failure):
        return prepared_b
    pa = prepared_a.unwrap()
    pb = prepared_b.unwrap()
    return prepared_cosine_angle(pa, pb, model, params)


def prepared_cosine_angle(
    pa: PreparedFiber,
    pb: PreparedFiber,
    model: KernelModel,
    params: KernelParams,
) -> Result[float, FvcError]:
    """cosine_angle on already-segmented fibers."""
    aa = pair_value(pa, pa, model, params)
    bb = pair_value(pb, pb, model, params)
    for fiber, norm_sq in ((pa.fiber, aa), (pb.fiber, bb)):
        if norm_sq <= ZERO_NORM_TOLERANCE:
            return Failure(
                FvcError(
                    operation="cosine_angle",
                    error_type="ZeroNormFiber",
                    message=(
                        f"Fiber {fiber.id} has non-positive self inner"
                        f" product under {model.value}"
                    ),
                    context={"fiber_id": fiber.id, "self_inner": norm_sq},
                ),
            )
    ab = pair_value(pa, pb, model, params)
    ratio = ab / math.sqrt(aa * bb)
    ratio = min(1.0, max(-1.0, ratio))
    return Success(math.degrees(math.acos(ratio)))
