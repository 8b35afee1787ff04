"""Shared test fixtures for the fvclust test suite."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from fvclust.fvc_modules.types import (
    Fiber,
    GramMatrix,
    KernelModel,
    KernelParams,
)

if TYPE_CHECKING:
    from collections.abc import Callable


def make_fiber(
    points: object,
    signal: object | None = None,
    fiber_id: int = 0,
) -> Fiber:
    """Fiber from raw points; constant 0.5 signal when none is given."""
    pts = np.asarray(points, dtype=np.float64)
    sig = np.full(pts.shape[0], 0.5) if signal is None else signal
    return Fiber(id=fiber_id, points=pts, signal=np.asarray(sig, dtype=np.float64))


def random_fiber(
    rng: np.random.Generator,
    fiber_id: int = 0,
    n_points: int = 12,
) -> Fiber:
    """Smooth-ish random walk in a 20 mm box with a random signal in [0, 1]."""
    start = rng.uniform(-10.0, 10.0, size=3)
    steps = rng.normal(0.0, 1.5, size=(n_points - 1, 3))
    points = np.vstack([start, start + np.cumsum(steps, axis=0)])
    return Fiber(
        id=fiber_id,
        points=points,
        signal=rng.uniform(0.0, 1.0, size=n_points),
    )


def random_psd_gram(
    rng: np.random.Generator,
    n: int,
    rank: int | None = None,
    *,
    nonnegative: bool = False,
) -> GramMatrix:
    """Q = X X^T from a random embedding; non-negative X gives non-negative Q."""
    dim = rank if rank is not None else n
    if nonnegative:
        x = rng.uniform(0.0, 1.0, size=(n, dim))
    else:
        x = rng.normal(size=(n, dim))
    return GramMatrix(
        values=x @ x.T,
        model=KernelModel.FUNCTIONAL_VARIFOLD,
        params=KernelParams(),
    )


def identity_gram(n: int) -> GramMatrix:
    return GramMatrix(
        values=np.eye(n),
        model=KernelModel.FUNCTIONAL_VARIFOLD,
        params=KernelParams(),
    )


@pytest.fixture
def unit_segment() -> Fiber:
    """Single segment (0,0,0)->(1,0,0) with signal 0.5 at both ends."""
    return make_fiber([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], [0.5, 0.5])


@pytest.fixture
def fiber_factory() -> Callable[..., Fiber]:
    return make_fiber


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)

