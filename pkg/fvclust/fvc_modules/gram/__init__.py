"""Gram matrix assembly, Nystrom approximation, kernel distances."""
from fvclust.fvc_modules.gram.assemble import assemble_gram, compute_gram, prepare_all
from fvclust.fvc_modules.gram.distance import (
    distance_matrix,
    kernel_distance,
    min_eigen_ratio,
)
from fvclust.fvc_modules.gram.nystrom import (
    EIGEN_CUTOFF,
    low_rank_factor,
    nystrom_gram,
    sample_landmarks,
)

__all__ = [
    "EIGEN_CUTOFF",
    "assemble_gram",
    "compute_gram",
    "distance_matrix",
    "kernel_distance",
    "low_rank_factor",
    "min_eigen_ratio",
    "nystrom_gram",
    "prepare_all",
    "sample_landmarks",
]
