"""Chance-corrected agreement between two partitions."""
from __future__ import annotations

from returns.result import Failure, Result, Success
from sklearn.metrics import adjusted_rand_score

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.types import ClusterAssignment


def adjusted_rand_index(
    a: ClusterAssignment,
    b: ClusterAssignment,
) -> Result[float, FvcError]:
    """ARI in [-1, 1]; 1.0 iff the partitions match up to relabeling.

    UNASSIGNED counts as one more label.
    """
    if a.n != b.n:
        return Failure(
            FvcError(
                operation="adjusted_rand_index",
                error_type="LengthMismatch",
                message=f"Cannot compare partitions of {a.n} and {b.n} fibers",
                context={"left": a.n, "right": b.n},
            ),
        )
    return Success(float(adjusted_rand_score(a.labels, b.labels)))
