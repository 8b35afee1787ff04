"""Eval command -- silhouette of a stored clustering, ARI when labels are given."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult

from fvclust.fvc_modules.commands._load import load_gram, load_labels, load_result
from fvclust.fvc_modules.evaluation.ari import adjusted_rand_index
from fvclust.fvc_modules.evaluation.silhouette import silhouette

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import (
        ClusterAssignment,
        FitConfig,
        FitResult,
        GramMatrix,
        SilhouetteReport,
    )


@dataclass(frozen=True)
class EvalReport:
    """Output of fvc eval; ari is None without planted labels."""

    mean_silhouette: float
    per_cluster: dict[int, float]
    n_unassigned: int
    ari: float | None = None

    def to_dict(self) -> dict[str, object]:
        data: dict[str, object] = {
            "mean_silhouette": self.mean_silhouette,
            "per_cluster": {str(k): v for k, v in sorted(self.per_cluster.items())},
            "n_unassigned": self.n_unassigned,
        }
        if self.ari is not None:
            data["ari"] = self.ari
        return data


def run_eval_command(
    gram_path: Path,
    result_path: Path,
    planted_path: Path | None = None,
) -> IOResult[EvalReport, FvcError]:
    """Silhouette in the Gram's own kernel distance (+ ARI vs planted)."""

    def _score(q: GramMatrix) -> IOResult[EvalReport, FvcError]:
        def _with_result(
            loaded: tuple[FitResult, ClusterAssignment, FitConfig],
        ) -> IOResult[EvalReport, FvcError]:
            _, assignment, _ = loaded
            report = IOResult.from_result(silhouette(q, assignment))
            if planted_path is None:
                return report.map(_to_report)
            return report.bind(
                lambda rep: load_labels(planted_path).bind(
                    lambda planted: IOResult.from_result(
                        adjusted_rand_index(assignment, planted),
                    ),
                ).map(lambda ari: _to_report(rep, ari)),
            )

        return load_result(result_path).bind(_with_result)

    return load_gram(gram_path).bind(_score)


def _to_report(rep: SilhouetteReport, ari: float | None = None) -> EvalReport:
    return EvalReport(
        mean_silhouette=rep.mean,
        per_cluster=dict(rep.per_cluster_mean),
        n_unassigned=rep.n_unassigned,
        ari=ari,
    )
