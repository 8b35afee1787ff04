"""Fiber model: construction, segmentation, synthetic bundles."""
from fvclust.fvc_modules.fibers.segment import (
    MIN_SEGMENT_LENGTH,
    arc_length,
    build_fiber,
    reverse_fiber,
    segment,
    subsample_fibers,
    translate_fiber,
)
from fvclust.fvc_modules.fibers.synthesize import (
    PlantedFibers,
    synthesize,
    template_curve,
)

__all__ = [
    "MIN_SEGMENT_LENGTH",
    "PlantedFibers",
    "arc_length",
    "build_fiber",
    "reverse_fiber",
    "segment",
    "subsample_fibers",
    "synthesize",
    "template_curve",
    "translate_fiber",
]
