"""Synthetic fiber sets with planted bundle structure.

Stand-in for tractography output: every bundle is a parametric
template curve (planar arc for even template ids, helix for odd ones)
stacked along z, copied per fiber with Gaussian vertex jitter. The
bundle's signal profile is sampled at the same curve parameters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fvclust.fvc_modules.types import (
    Fiber,
    FloatArray,
    IntArray,
    SyntheticBundleSpec,
)

ARC_RADIUS = 20.0
HELIX_RADIUS = 6.0
HELIX_TURNS = 1.5
HELIX_LENGTH = 40.0


@dataclass(frozen=True, eq=False)
class PlantedFibers:
    """Synthetic fibers with their ground-truth bundle labels."""

    fibers: tuple[Fiber, ...]
    labels: IntArray


def template_curve(
    template_id: int,
    u: FloatArray,
    spacing: float,
) -> FloatArray:
    """Points of template curve template_id at parameters u in [0, 1]."""
    offset = np.array([0.0, 0.0, template_id * spacing])
    if template_id % 2 == 0:
        rotation = 0.7 * template_id
        angle = np.pi * u + rotation
        curve = np.column_stack(
            [
                ARC_RADIUS * np.cos(angle),
                ARC_RADIUS * np.sin(angle),
                np.zeros_like(u),
            ],
        )
    else:
        turn = 2.0 * np.pi * HELIX_TURNS * u
        curve = np.column_stack(
            [
                HELIX_LENGTH * (u - 0.5),
                HELIX_RADIUS * np.cos(turn),
                HELIX_RADIUS * np.sin(turn),
            ],
        )
    return curve + offset


def synthesize(spec: SyntheticBundleSpec) -> PlantedFibers:
    """Generate the fiber set described by spec (pure function of spec)."""
    rng = np.random.default_rng(spec.seed)
    u = np.linspace(0.0, 1.0, spec.points_per_fiber)
    profiles = spec.resolved_profiles()
    geometry_ids = spec.resolved_geometry_ids()

    fibers: list[Fiber] = []
    labels: list[int] = []
    for bundle in range(spec.bundle_count):
        template = template_curve(geometry_ids[bundle], u, spec.bundle_spacing)
        profile = profiles[bundle].evaluate(u)
        for _ in range(spec.fibers_per_bundle):
            jitter = rng.normal(0.0, 1.0, size=template.shape)
            noise = rng.normal(0.0, 1.0, size=profile.shape)
            fibers.append(
                Fiber(
                    id=len(fibers),
                    points=template + spec.geometry_jitter * jitter,
                    signal=np.clip(profile + spec.signal_jitter * noise, 0.0, 1.0),
                ),
            )
            labels.append(bundle)

    return PlantedFibers(
        fibers=tuple(fibers),
        labels=np.asarray(labels, dtype=np.int64),
    )
