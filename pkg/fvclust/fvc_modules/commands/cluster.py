"""Cluster command -- Gram file in, result file out."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from returns.io import IOResult

from fvclust.fvc_modules import formats, io_ops
from fvclust.fvc_modules.commands._load import load_gram
from fvclust.fvc_modules.dictionary.fit import fit
from fvclust.fvc_modules.evaluation.assign import cluster_sizes, hard_assign

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.errors import FvcError
    from fvclust.fvc_modules.types import FitConfig, FitResult, GramMatrix


@dataclass(frozen=True)
class ClusterCommandResult:
    """Output of fvc cluster.

    cluster_sizes counts fibers per atom; unassigned fibers are
    reported separately.
    """

    result_path: str
    n: int
    m: int
    iterations_run: int
    final_objective: float
    violations: int
    cluster_sizes: tuple[int, ...]
    n_unassigned: int


def run_cluster_command(
    gram_path: Path,
    result_out: Path,
    config: FitConfig,
) -> IOResult[ClusterCommandResult, FvcError]:
    """fit + hard_assign on a stored Gram; writes the result file."""

    def _fit_and_write(q: GramMatrix) -> IOResult[ClusterCommandResult, FvcError]:
        def _write(
            fit_result: FitResult,
        ) -> IOResult[ClusterCommandResult, FvcError]:
            assignment = hard_assign(fit_result.codes)
            text = formats.encode_result(fit_result, assignment, config)
            return io_ops.write_text(result_out, text).map(
                lambda _: ClusterCommandResult(
                    result_path=str(result_out),
                    n=q.n,
                    m=config.m,
                    iterations_run=fit_result.iterations_run,
                    final_objective=fit_result.objective_trace[-1],
                    violations=fit_result.violations,
                    cluster_sizes=tuple(
                        int(c) for c in cluster_sizes(assignment)
                    ),
                    n_unassigned=assignment.n_unassigned,
                ),
            )

        return IOResult.from_result(fit(q, config)).bind(_write)

    return load_gram(gram_path).bind(_fit_and_write)
