"""Hard assignment, silhouette and ARI."""
from fvclust.fvc_modules.evaluation.ari import adjusted_rand_index
from fvclust.fvc_modules.evaluation.assign import cluster_sizes, hard_assign
from fvclust.fvc_modules.evaluation.experiments import (
    ComparisonRow,
    LambdaRow,
    compare_models,
    lambda_m_silhouette,
    seeded_silhouettes,
)
from fvclust.fvc_modules.evaluation.silhouette import silhouette

__all__ = [
    "ComparisonRow",
    "LambdaRow",
    "adjusted_rand_index",
    "cluster_sizes",
    "compare_models",
    "hard_assign",
    "lambda_m_silhouette",
    "seeded_silhouettes",
    "silhouette",
]
