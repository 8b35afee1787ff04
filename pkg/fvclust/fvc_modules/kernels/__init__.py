"""Pairwise fiber comparison models."""
from fvclust.fvc_modules.kernels.mcp import mcp_distance, mcp_rbf
from fvclust.fvc_modules.kernels.models import (
    PreparedFiber,
    cosine_angle,
    inner,
    pair_value,
    prepare,
    prepared_cosine_angle,
)
from fvclust.fvc_modules.kernels.sweep import SweepRow, sweep_angles
from fvclust.fvc_modules.kernels.varifold import (
    fvar_inner,
    signal_inner,
    var_inner,
)

__all__ = [
    "PreparedFiber",
    "SweepRow",
    "cosine_angle",
    "fvar_inner",
    "inner",
    "mcp_distance",
    "mcp_rbf",
    "pair_value",
    "prepare",
    "prepared_cosine_angle",
    "signal_inner",
    "sweep_angles",
    "var_inner",
]
