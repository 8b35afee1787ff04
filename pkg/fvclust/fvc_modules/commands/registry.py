"""Command registry: the fvc subcommands and their help text."""
from __future__ import annotations

from types import MappingProxyType

from fvclust.fvc_modules.commands.types import CommandSpec

COMMAND_REGISTRY: MappingProxyType[str, CommandSpec] = MappingProxyType(
    {
        spec.name: spec
        for spec in (
            CommandSpec("synth", "Generate synthetic fibers with planted bundles"),
            CommandSpec("gram", "Compute a fiber Gram matrix (exact or Nystrom)"),
            CommandSpec("cluster", "Learn a sparse dictionary and assign clusters"),
            CommandSpec(
                "eval", "Score a clustering: silhouette, ARI vs planted labels",
            ),
            CommandSpec("sweep", "Cosine angles of fiber pairs over a bandwidth grid"),
            CommandSpec(
                "compare", "Mean silhouette per comparison model and atom count",
            ),
            CommandSpec(
                "lambda-sweep",
                "fVar, Var and signal-only clustering consistency over lambda_m",
            ),
        )
    },
)


def get_command(name: str) -> CommandSpec | None:
    """Look up a command by name. Returns None if not found."""
    return COMMAND_REGISTRY.get(name)
