"""Silhouette scores in the kernel-induced distance of a Gram matrix.

Unassigned fibers are left out. A fiber alone in its cluster scores 0.
"""
from __future__ import annotations

import numpy as np
from returns.result import Failure, Result, Success
from sklearn.metrics import silhouette_samples

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.gram.distance import distance_matrix
from fvclust.fvc_modules.types import (
    UNASSIGNED,
    ClusterAssignment,
    GramMatrix,
    SilhouetteReport,
)


def silhouette(
    q: GramMatrix,
    assignment: ClusterAssignment,
) -> Result[SilhouetteReport, FvcError]:
    """Per-fiber silhouette over assigned fibers, plus overall and per-cluster means."""
    if assignment.n != q.n:
        return Failure(
            FvcError(
                operation="silhouette",
                error_type="DimensionMismatch",
                message=f"{assignment.n} labels for a {q.n}x{q.n} Gram matrix",
                context={"labels": assignment.n, "gram_n": q.n},
            ),
        )
    labels = np.asarray(assignment.labels)
    keep = labels != UNASSIGNED
    kept_labels = labels[keep]
    clusters = np.unique(kept_labels)
    if clusters.size < 2:  # noqa: PLR2004
        return Failure(
            FvcError(
                operation="silhouette",
                error_type="SingleClusterInput",
                message=(
                    f"Silhouette needs at least 2 non-empty clusters,"
                    f" got {clusters.size}"
                ),
                context={
                    "clusters": clusters.tolist(),
                    "n_unassigned": assignment.n_unassigned,
                },
            ),
        )

    distances = distance_matrix(q)[np.ix_(keep, keep)]
    if clusters.size == kept_labels.size:
        # every cluster is a singleton
        values = np.zeros(kept_labels.size)
    else:
        values = silhouette_samples(distances, kept_labels, metric="precomputed")
        values = np.clip(np.nan_to_num(values), -1.0, 1.0)

    per_cluster = {
        int(c): float(values[kept_labels == c].mean()) for c in clusters
    }
    return Success(
        SilhouetteReport(
            per_fiber=tuple(float(v) for v in values),
            mean=float(values.mean()),
            per_cluster_mean=per_cluster,
            n_unassigned=assignment.n_unassigned,
        ),
    )
