"""I/O boundary module -- ALL filesystem and stream access goes through here.

This is the single mock point for the test suite. Numeric modules
never open files; commands call io_ops functions.
"""
from __future__ import annotations

import sys
from typing import TYPE_CHECKING

from returns.io import IOFailure, IOResult, IOSuccess

from fvclust.fvc_modules.errors import FvcError

if TYPE_CHECKING:
    from pathlib import Path

    from fvclust.fvc_modules.types import RunEvent


def _os_failure(operation: str, path: Path, exc: OSError) -> FvcError:
    if isinstance(exc, FileNotFoundError):
        message = f"File not found: {path}"
    elif isinstance(exc, PermissionError):
        message = f"Permission denied: {path}"
    else:
        message = f"OS error on {path}: {exc}"
    return FvcError(
        operation=f"io_ops.{operation}",
        error_type=type(exc).__name__,
        message=message,
        context={"path": str(path)},
    )


def read_text(path: Path) -> IOResult[str, FvcError]:
    """Read a UTF-8 text file. Returns IOResult, never raises."""
    try:
        return IOSuccess(path.read_text(encoding="utf-8"))
    except OSError as exc:
        return IOFailure(_os_failure("read_text", path, exc))
    except UnicodeDecodeError as exc:
        return IOFailure(
            FvcError(
                operation="io_ops.read_text",
                error_type="UnicodeDecodeError",
                message=f"{path} is not valid UTF-8: {exc.reason}",
                context={"path": str(path)},
            ),
        )


def read_bytes(path: Path) -> IOResult[bytes, FvcError]:
    """Read a binary file. Returns IOResult, never raises."""
    try:
        return IOSuccess(path.read_bytes())
    except OSError as exc:
        return IOFailure(_os_failure("read_bytes", path, exc))


def write_text(path: Path, text: str) -> IOResult[None, FvcError]:
    """Write text with LF line endings, creating parent directories."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        return IOFailure(_os_failure("write_text", path, exc))
    return IOSuccess(None)


def write_bytes(path: Path, data: bytes) -> IOResult[None, FvcError]:
    """Write binary data, creating parent directories."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        return IOFailure(_os_failure("write_bytes", path, exc))
    return IOSuccess(None)


def append_run_event(
    path: Path,
    event: RunEvent,
) -> IOResult[None, FvcError]:
    """Append one event as a JSONL line to the run log.

    Creates the parent directory if it does not exist.
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a", encoding="utf-8") as f:
            f.write(event.to_jsonl() + "\n")
    except OSError as exc:
        return IOFailure(
            FvcError(
                operation="io_ops.append_run_event",
                error_type="RunLogWriteError",
                message=f"Failed to write run log {path}: {exc}",
                context={
                    "path": str(path),
                    "command": event.command,
                    "event_type": event.event_type,
                },
            ),
        )
    return IOSuccess(None)


def write_stderr(
    message: str,
) -> IOResult[None, FvcError]:
    """Write message to stderr and flush it.

    Returns IOSuccess(None) or IOFailure on error.
    """
    try:
        sys.stderr.write(message)
        sys.stderr.flush()
    except OSError as exc:
        return IOFailure(
            FvcError(
                operation="io_ops.write_stderr",
                error_type="StderrWriteError",
                message=f"Failed to write to stderr: {exc}",
                context={"original_message": message},
            ),
        )
    return IOSuccess(None)
