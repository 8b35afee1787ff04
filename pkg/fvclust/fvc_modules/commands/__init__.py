"""Commands package -- one run_*_command per CLI subcommand.

Each command reads its inputs through io_ops, runs the numeric
layers, writes its outputs through io_ops and returns an IOResult
holding a frozen result record.
"""
from __future__ import annotations

from fvclust.fvc_modules.commands.cluster import (
    ClusterCommandResult,
    run_cluster_command,
)
from fvclust.fvc_modules.commands.compare import (
    CompareCommandResult,
    LambdaSweepCommandResult,
    run_compare_command,
    run_lambda_sweep_command,
)
from fvclust.fvc_modules.commands.evaluate import EvalReport, run_eval_command
from fvclust.fvc_modules.commands.gram import GramCommandResult, run_gram_command
from fvclust.fvc_modules.commands.registry import get_command
from fvclust.fvc_modules.commands.sweep import SweepCommandResult, run_sweep_command
from fvclust.fvc_modules.commands.synth import SynthCommandResult, run_synth_command
from fvclust.fvc_modules.commands.types import CommandSpec

__all__ = [
    "ClusterCommandResult",
    "CommandSpec",
    "CompareCommandResult",
    "EvalReport",
    "GramCommandResult",
    "LambdaSweepCommandResult",
    "SweepCommandResult",
    "SynthCommandResult",
    "get_command",
    "run_cluster_command",
    "run_compare_command",
    "run_eval_command",
    "run_gram_command",
    "run_lambda_sweep_command",
    "run_sweep_command",
    "run_synth_command",
]
