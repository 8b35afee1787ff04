"""Fixtures writing small fiber, Gram and result files to tmp_path."""
from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from returns.unsafe import unsafe_perform_io

from fvclust.fvc_modules.commands.cluster import run_cluster_command
from fvclust.fvc_modules.commands.gram import run_gram_command
from fvclust.fvc_modules.commands.synth import run_synth_command
from fvclust.fvc_modules.types import (
    FitConfig,
    KernelModel,
    KernelParams,
    SyntheticBundleSpec,
)

if TYPE_CHECKING:
    from pathlib import Path

SMALL_SPEC = SyntheticBundleSpec(
    bundle_count=2, fibers_per_bundle=4, points_per_fiber=8, seed=3,
)


@pytest.fixture
def fiber_file(tmp_path: Path) -> Path:
    """8 synthetic fibers in 2 bundles, labels next to them."""
    path = tmp_path / "fibers.jsonl"
    unsafe_perform_io(
        run_synth_command(SMALL_SPEC, path, tmp_path / "planted.json").unwrap(),
    )
    return path


@pytest.fixture
def gram_file(fiber_file: Path) -> Path:
    path = fiber_file.parent / "q.gram"
    unsafe_perform_io(
        run_gram_command(
            fiber_file, path, KernelModel.FUNCTIONAL_VARIFOLD, KernelParams(),
        ).unwrap(),
    )
    return path


@pytest.fixture
def result_file(gram_file: Path) -> Path:
    path = gram_file.parent / "result.json"
    unsafe_perform_io(
        run_cluster_command(gram_file, path, FitConfig(m=2, seed=0)).unwrap(),
    )
    return path
