"""Mean closest-point distance between polylines and its RBF kernel."""
from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from fvclust.fvc_modules.types import Fiber, KernelParams


def mcp_distance(a: Fiber, b: Fiber) -> float:
    """Symmetrized mean closest-point distance (mm) over vertices."""
    dist = cdist(a.points, b.points)
    a_to_b = float(dist.min(axis=1).mean())
    b_to_a = float(dist.min(axis=0).mean())
    return 0.5 * (a_to_b + b_to_a)


def mcp_rbf(a: Fiber, b: Fiber, params: KernelParams) -> float:
    """exp(-gamma * d^2) with d the MCP distance; 1 for identical fibers."""
    d = mcp_distance(a, b)
    return float(np.exp(-params.gamma * d * d))
