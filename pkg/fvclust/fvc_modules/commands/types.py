"""Command type definitions for the fvc command pattern."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CommandSpec:
    """A registered fvc subcommand and its one-line help."""

    name: str
    description: str
