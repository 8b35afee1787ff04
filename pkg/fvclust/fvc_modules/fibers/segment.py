"""Fiber construction and segment decomposition.

A fiber of N vertices becomes up to N-1 segments, each described by
its center point, difference vector, length and the mean of its two
endpoint signal values. Segments shorter than MIN_SEGMENT_LENGTH are
dropped (duplicate tractography points).
"""
from __future__ import annotations

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.types import Fiber, FloatArray, IntArray, SegmentedFiber

MIN_SEGMENT_LENGTH = 1e-9


def build_fiber(
    fiber_id: int,
    points: object,
    signal: object,
) -> Result[Fiber, FvcError]:
    """Validate raw arrays and wrap them as a Fiber (pure function)."""
    try:
        pts = np.asarray(points, dtype=np.float64)
        sig = np.asarray(signal, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        return Failure(
            _invalid(fiber_id, f"non-numeric fiber data: {exc}"),
        )

    if pts.ndim != 2 or pts.shape[1] != 3:  # noqa: PLR2004
        return Failure(
            _invalid(fiber_id, f"points must have shape (N, 3), got {pts.shape}"),
        )
    if pts.shape[0] < 2:  # noqa: PLR2004
        return Failure(
            _invalid(fiber_id, "a fiber needs at least 2 points"),
        )
    if sig.ndim != 1 or sig.shape[0] != pts.shape[0]:
        return Failure(
            _invalid(
                fiber_id,
                f"signal length {sig.shape} does not match"
                f" {pts.shape[0]} points",
            ),
        )
    if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(sig))):
        return Failure(
            _invalid(fiber_id, "coordinates and signal must be finite"),
        )
    return Success(Fiber(id=fiber_id, points=pts, signal=sig))


def _invalid(fiber_id: int, message: str) -> FvcError:
    return FvcError(
        operation="build_fiber",
        error_type="InvalidFiber",
        message=message,
        context={"fiber_id": fiber_id},
    )


def segment(fiber: Fiber) -> Result[SegmentedFiber, FvcError]:
    """Decompose a fiber into non-degenerate segments (pure function)."""
    points = fiber.points
    gaps = points[1:] - points[:-1]
    lengths = np.linalg.norm(gaps, axis=1)
    keep = lengths >= MIN_SEGMENT_LENGTH
    if not np.any(keep):
        return Failure(
            FvcError(
                operation="segment",
                error_type="AllSegmentsDegenerate",
                message=(
                    f"Every segment of fiber {fiber.id} is shorter"
                    f" than {MIN_SEGMENT_LENGTH} mm"
                ),
                context={"fiber_id": fiber.id, "n_points": fiber.n_points},
            ),
        )

    centers = 0.5 * (points[1:] + points[:-1])
    center_signal = 0.5 * (fiber.signal[1:] + fiber.signal[:-1])
    return Success(
        SegmentedFiber(
            centers=centers[keep],
            tangents=gaps[keep],
            lengths=lengths[keep],
            center_signal=center_signal[keep],
        ),
    )


def reverse_fiber(fiber: Fiber) -> Fiber:
    """Same curve traversed backwards, signal reversed consistently."""
    return Fiber(
        id=fiber.id,
        points=fiber.points[::-1],
        signal=fiber.signal[::-1],
    )


def arc_length(fiber: Fiber) -> float:
    """Polyline length in mm."""
    gaps = np.diff(fiber.points, axis=0)
    return float(np.linalg.norm(gaps, axis=1).sum())


def translate_fiber(fiber: Fiber, offset: FloatArray) -> Fiber:
    """Rigidly shift every vertex by offset."""
    return Fiber(
        id=fiber.id,
        points=fiber.points + np.asarray(offset, dtype=np.float64),
        signal=fiber.signal,
    )


def subsample_fibers(n: int, count: int, seed: int) -> IntArray:
    """Seeded uniform sample of count distinct indices out of n, sorted."""
    rng = np.random.default_rng(seed)
    picked = rng.choice(n, size=min(count, n), replace=False)
    return np.sort(picked).astype(np.int64)
