"""Hard cluster assignment from sparse codes."""
from __future__ import annotations

import numpy as np

from fvclust.fvc_modules.types import (
    UNASSIGNED,
    ClusterAssignment,
    IntArray,
    SparseCodes,
)


def hard_assign(w: SparseCodes) -> ClusterAssignment:
    """Label each fiber with its heaviest atom (lowest index on ties).

    Fibers whose code column is all zero get UNASSIGNED.
    """
    W = np.asarray(w.codes)
    labels = np.argmax(W, axis=0).astype(np.int64)
    labels[~np.any(W > 0, axis=0)] = UNASSIGNED
    return ClusterAssignment(labels=labels, source="codes", m=w.m)


def cluster_sizes(assignment: ClusterAssignment) -> IntArray:
    """Fiber count per label 0..m-1; unassigned fibers are not counted."""
    labels = np.asarray(assignment.labels)
    assigned = labels[labels != UNASSIGNED]
    return np.bincount(assigned, minlength=assignment.m).astype(np.int64)
