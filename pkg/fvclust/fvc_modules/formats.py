"""Pure codecs for fvclust's file formats.

Fibers: JSON Lines, one {"id", "points", "signal"} record per line.
Gram: "GRM1", model tag byte, lambda_w/lambda_m/gamma as <f8, n as
<u8, then the upper triangle row-major as <f8.
Results and labels: JSON with sorted keys.
Sweeps: CSV with columns lambda_w, lambda_m, pair_id, angle_deg.

Floats are written with repr, which round-trips exactly, so
write -> read -> write reproduces the same bytes.
"""
from __future__ import annotations

import json
import struct
from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.fibers.segment import build_fiber
from fvclust.fvc_modules.kernels.sweep import SweepRow
from fvclust.fvc_modules.types import (
    ClusterAssignment,
    Dictionary,
    Fiber,
    FitConfig,
    FitResult,
    FloatArray,
    GramMatrix,
    KernelModel,
    KernelParams,
    SparseCodes,
)

GRAM_MAGIC = b"GRM1"
_GRAM_HEADER = struct.Struct("<4sBdddQ")
SWEEP_HEADER = "lambda_w,lambda_m,pair_id,angle_deg"


class FiberRecord(BaseModel):
    """One line of a fiber file."""

    model_config = ConfigDict(extra="forbid", strict=True)

    id: int
    points: list[tuple[float, float, float]]
    signal: list[float]


# --- Fibers ---


def encode_fibers(fibers: Sequence[Fiber]) -> str:
    lines = [
        json.dumps(
            {
                "id": fiber.id,
                "points": fiber.points.tolist(),
                "signal": fiber.signal.tolist(),
            },
            separators=(",", ":"),
        )
        for fiber in fibers
    ]
    return "".join(line + "\n" for line in lines)


def decode_fibers(text: str) -> Result[list[Fiber], FvcError]:
    """Parse a fiber file; errors carry the 1-based line number."""
    fibers: list[Fiber] = []
    seen: dict[int, int] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = FiberRecord.model_validate_json(line)
        except ValidationError as exc:
            return Failure(
                FvcError(
                    operation="decode_fibers",
                    error_type="MalformedRecord",
                    message=f"Line {line_no}: {exc.errors()[0]['msg']}",
                    context={"line": line_no},
                ),
            )
        if record.id in seen:
            return Failure(
                FvcError(
                    operation="decode_fibers",
                    error_type="DuplicateFiberId",
                    message=(
                        f"Line {line_no}: fiber id {record.id} already used"
                        f" on line {seen[record.id]}"
                    ),
                    context={"line": line_no, "fiber_id": record.id},
                ),
            )
        seen[record.id] = line_no
        built = build_fiber(record.id, record.points, record.signal)
        if isinstance(built, Failure):
            return Failure(
                built.failure().with_context(line=line_no),
            )
        fibers.append(built.unwrap())
    return Success(fibers)


# --- Gram ---


def encode_gram(q: GramMatrix) -> bytes:
    """Header plus upper-triangle payload; the approximate flag is not stored."""
    header = _GRAM_HEADER.pack(
        GRAM_MAGIC,
        q.model.tag_byte,
        q.params.lambda_w,
        q.params.lambda_m,
        q.params.gamma,
        q.n,
    )
    upper = np.asarray(q.values)[np.triu_indices(q.n)]
    return header + upper.astype("<f8").tobytes()


def _malformed_gram(message: str, **context: object) -> FvcError:
    return FvcError(
        operation="decode_gram",
        error_type="MalformedGramFile",
        message=message,
        context=dict(context),
    )


def decode_gram(data: bytes) -> Result[GramMatrix, FvcError]:
    """Rebuild the symmetric matrix from the stored upper triangle."""
    if len(data) < _GRAM_HEADER.size:
        return Failure(
            _malformed_gram(
                f"File has {len(data)} bytes, header needs {_GRAM_HEADER.size}",
                size=len(data),
            ),
        )
    magic, tag, lambda_w, lambda_m, gamma, n = _GRAM_HEADER.unpack_from(data)
    if magic != GRAM_MAGIC:
        return Failure(_malformed_gram(f"Bad magic {magic!r}", magic=repr(magic)))
    model = KernelModel.from_tag_byte(tag)
    if model is None:
        return Failure(_malformed_gram(f"Unknown model tag {tag}", tag=tag))
    expected = _GRAM_HEADER.size + 8 * (n * (n + 1) // 2)
    if len(data) != expected:
        return Failure(
            _malformed_gram(
                f"Payload length {len(data)} does not match n={n}",
                size=len(data),
                expected=expected,
            ),
        )
    try:
        params = KernelParams(lambda_w=lambda_w, lambda_m=lambda_m, gamma=gamma)
    except ValidationError as exc:
        return Failure(_malformed_gram(f"Invalid kernel parameters: {exc}"))

    upper = np.frombuffer(data, dtype="<f8", offset=_GRAM_HEADER.size)
    values = np.zeros((n, n), dtype=np.float64)
    rows, cols = np.triu_indices(n)
    values[rows, cols] = upper
    values[cols, rows] = upper
    return Success(GramMatrix(values=values, model=model, params=params))


# --- Results ---


def _sparse_triples(matrix: FloatArray) -> list[list[float]]:
    rows, cols = np.nonzero(matrix)
    return [
        [int(r), int(c), float(matrix[r, c])]
        for r, c in zip(rows, cols, strict=True)
    ]


def encode_result(
    result: FitResult,
    assignment: ClusterAssignment,
    config: FitConfig,
) -> str:
    """Labels, W, A and soft memberships as (row, column, value) triples.

    seed is the configured seed, restart_seed the one whose run was kept.
    """
    W = np.asarray(result.codes.codes)
    A = np.asarray(result.dictionary.atoms)
    document = {
        "n": int(W.shape[1]),
        "m": int(W.shape[0]),
        "labels": assignment.labels.tolist(),
        "codes": _sparse_triples(W),
        "atoms": _sparse_triples(A),
        "memberships": _sparse_triples(result.memberships()),
        "objective_trace": list(result.objective_trace),
        "iterations_run": result.iterations_run,
        "violations": result.violations,
        "reseeded": result.reseeded,
        "config": config.model_dump(mode="json"),
        "seed": config.seed,
        "restart_seed": result.seed,
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


class _ResultDocument(BaseModel):
    model_config = ConfigDict(extra="ignore")

    n: int
    m: int
    labels: list[int]
    codes: list[tuple[int, int, float]]
    atoms: list[tuple[int, int, float]]
    objective_trace: list[float]
    iterations_run: int
    violations: int = 0
    reseeded: int = 0
    restart_seed: int = 0
    config: FitConfig


def _malformed_result(message: str) -> FvcError:
    return FvcError(
        operation="decode_result",
        error_type="MalformedResultFile",
        message=message,
    )


def decode_result(
    text: str,
) -> Result[tuple[FitResult, ClusterAssignment, FitConfig], FvcError]:
    """Parse a result file and check its dimensions agree."""
    try:
        doc = _ResultDocument.model_validate_json(text)
    except ValidationError as exc:
        return Failure(_malformed_result(f"Invalid result file: {exc}"))
    if len(doc.labels) != doc.n or doc.m != doc.config.m:
        return Failure(
            _malformed_result(
                f"{len(doc.labels)} labels and m={doc.config.m} in config"
                f" disagree with n={doc.n}, m={doc.m}",
            ),
        )
    W = np.zeros((doc.m, doc.n))
    A = np.zeros((doc.n, doc.m))
    for target, triples, label in ((W, doc.codes, "codes"), (A, doc.atoms, "atoms")):
        for r, c, value in triples:
            if not (0 <= r < target.shape[0] and 0 <= c < target.shape[1]):
                return Failure(
                    _malformed_result(f"{label} entry ({r}, {c}) out of range"),
                )
            target[r, c] = value
    fit_result = FitResult(
        dictionary=Dictionary(atoms=A),
        codes=SparseCodes(codes=W, s_max=doc.config.s_max),
        objective_trace=tuple(doc.objective_trace),
        iterations_run=doc.iterations_run,
        violations=doc.violations,
        reseeded=doc.reseeded,
        seed=doc.restart_seed,
    )
    assignment = ClusterAssignment(labels=doc.labels, source="codes", m=doc.m)
    return Success((fit_result, assignment, doc.config))


# --- Labels ---


def encode_labels(assignment: ClusterAssignment) -> str:
    document = {
        "labels": assignment.labels.tolist(),
        "m": assignment.m,
        "source": assignment.source,
    }
    return json.dumps(document, sort_keys=True) + "\n"


class _LabelsDocument(BaseModel):
    labels: list[int]
    source: Literal["codes", "planted"] = "planted"
    m: int | None = None


def decode_labels(text: str) -> Result[ClusterAssignment, FvcError]:
    try:
        doc = _LabelsDocument.model_validate_json(text)
    except ValidationError as exc:
        return Failure(
            FvcError(
                operation="decode_labels",
                error_type="MalformedRecord",
                message=f"Invalid labels file: {exc}",
            ),
        )
    m = doc.m if doc.m is not None else max(doc.labels, default=-1) + 1
    return Success(ClusterAssignment(labels=doc.labels, source=doc.source, m=m))


# --- Sweeps ---


def encode_sweep(rows: Sequence[SweepRow]) -> str:
    lines = [SWEEP_HEADER]
    lines.extend(
        f"{row.lambda_w!r},{row.lambda_m!r},{row.pair_id},{row.angle_deg!r}"
        for row in rows
    )
    return "\n".join(lines) + "\n"
