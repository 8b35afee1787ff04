"""fvc -- functional-varifold fiber clustering pipeline.

Usage:
    fvc synth --bundles 4 --per-bundle 50 --seed 7 -o fibers.jsonl
        --labels-out planted.json
    fvc gram --model fvar --in fibers.jsonl -o fvar.grm
    fvc cluster --gram fvar.grm --m 4 --s-max 1 --seed 0 -o result.json
    fvc eval --gram fvar.grm --result result.json --planted planted.json
    fvc sweep --fibers fibers.jsonl --pairs 0-50 --lambda-m 0.001,0.01,0.1
    fvc compare --fibers fibers.jsonl --m 4 --seeds 0,1,2 --sample 100
    fvc lambda-sweep --fibers fibers.jsonl --m 4 --m 8

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""
from __future__ import annotations

import json
import logging
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, TypeVar

import click
from pydantic import ValidationError
from returns.io import IOFailure, IOResult
from returns.unsafe import unsafe_perform_io
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from fvclust.fvc_modules import io_ops
from fvclust.fvc_modules.commands import (
    get_command,
    run_cluster_command,
    run_compare_command,
    run_eval_command,
    run_gram_command,
    run_lambda_sweep_command,
    run_sweep_command,
    run_synth_command,
)
from fvclust.fvc_modules.types import (
    DEFAULT_GAMMA,
    DEFAULT_LAMBDA_M,
    DEFAULT_LAMBDA_W,
    LAMBDA_M_SWEEP,
    LAMBDA_W_SWEEP,
    FitConfig,
    KernelModel,
    KernelParams,
    RunEvent,
    SyntheticBundleSpec,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from fvclust.fvc_modules.commands import CompareCommandResult
    from fvclust.fvc_modules.errors import FvcError

T = TypeVar("T")

MODEL_CHOICE = click.Choice([model.value for model in KernelModel])


@dataclass(frozen=True)
class CliState:
    """Options shared by every subcommand."""

    run_log: Path | None


def _help(name: str) -> str:
    spec = get_command(name)
    return spec.description if spec is not None else ""


def _configure_logging(*, verbose: bool) -> None:
    root = logging.getLogger("fvclust")
    root.handlers.clear()
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _log_event(
    state: CliState,
    command: str,
    event_type: str,
    payload: dict[str, object],
) -> None:
    if state.run_log is None:
        return
    event = RunEvent(
        timestamp=datetime.now(tz=timezone.utc).isoformat(),
        command=command,
        event_type=event_type,
        payload=payload,
    )
    written = io_ops.append_run_event(state.run_log, event)
    if isinstance(written, IOFailure):
        err = unsafe_perform_io(written.failure())
        io_ops.write_stderr(f"Warning: {err.message}\n")


def _finish(
    ctx: click.Context,
    command: str,
    result: IOResult[T, FvcError],
) -> T:
    """Unwrap a command result, or report the error and exit 1."""
    state: CliState = ctx.obj
    if isinstance(result, IOFailure):
        err = unsafe_perform_io(result.failure())
        _log_event(state, command, "failed", err.to_dict())
        io_ops.write_stderr(f"Error: {err}\n")
        sys.exit(1)
    value = unsafe_perform_io(result.unwrap())
    _log_event(state, command, "finished", {})
    return value


def _parse_floats(
    _ctx: click.Context,
    param: click.Parameter,
    value: str,
) -> tuple[float, ...]:
    try:
        parsed = tuple(float(part) for part in value.split(",") if part.strip())
    except ValueError as exc:
        msg = f"{param.name}: expected comma-separated numbers, got {value!r}"
        raise click.BadParameter(msg) from exc
    if not parsed or any(v <= 0 for v in parsed):
        msg = f"{param.name}: expected positive numbers, got {value!r}"
        raise click.BadParameter(msg)
    return parsed


def _parse_ints(
    _ctx: click.Context,
    param: click.Parameter,
    value: str | None,
) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError as exc:
        msg = f"{param.name}: expected comma-separated integers, got {value!r}"
        raise click.BadParameter(msg) from exc


def _parse_pairs(
    _ctx: click.Context,
    _param: click.Parameter,
    value: str,
) -> tuple[tuple[int, int], ...]:
    pairs: list[tuple[int, int]] = []
    for item in value.split(","):
        left, sep, right = item.strip().partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            msg = f"pairs must look like 0-1,2-3; got {item!r}"
            raise click.BadParameter(msg)
        pairs.append((int(left), int(right)))
    return tuple(pairs)


def _parse_models(
    _ctx: click.Context,
    _param: click.Parameter,
    value: str,
) -> tuple[KernelModel, ...]:
    try:
        return tuple(KernelModel(part.strip()) for part in value.split(","))
    except ValueError as exc:
        msg = f"models must be among {', '.join(m.value for m in KernelModel)}"
        raise click.BadParameter(msg) from exc


def _kernel_params(lambda_w: float, lambda_m: float, gamma: float) -> KernelParams:
    try:
        return KernelParams(lambda_w=lambda_w, lambda_m=lambda_m, gamma=gamma)
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc


def _sample_options(func: click.decorators.FC) -> click.decorators.FC:
    func = click.option(
        "--sample-seed", type=click.IntRange(min=0), default=0, show_default=True,
        help="Seed of the fiber subsample",
    )(func)
    return click.option(
        "--sample", type=click.IntRange(min=1), default=None,
        help="Use a seeded subset of this many fibers",
    )(func)


def _echo_json(data: object) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _lambda_options(func: click.decorators.FC) -> click.decorators.FC:
    func = click.option(
        "--gamma", type=float, default=DEFAULT_GAMMA, show_default=True,
        help="MCP RBF gamma",
    )(func)
    func = click.option(
        "--lambda-m", "lambda_m", type=float, default=DEFAULT_LAMBDA_M,
        show_default=True, help="Signal bandwidth",
    )(func)
    return click.option(
        "--lambda-w", "lambda_w", type=float, default=DEFAULT_LAMBDA_W,
        show_default=True, help="Spatial bandwidth (mm)",
    )(func)


@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging on stderr")
@click.option(
    "--run-log",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Append JSONL run events to this file",
)
@click.pass_context
def main(ctx: click.Context, *, verbose: bool, run_log: Path | None) -> None:
    """Fiber clustering with functional varifolds and sparse dictionaries."""
    _configure_logging(verbose=verbose)
    ctx.obj = CliState(run_log=run_log)
    if ctx.invoked_subcommand is not None:
        _log_event(
            ctx.obj,
            ctx.invoked_subcommand,
            "started",
            {},
        )


@main.command(help=_help("synth"))
@click.option("--bundles", type=click.IntRange(min=1), required=True)
@click.option("--per-bundle", type=click.IntRange(min=1), required=True)
@click.option("--points", type=click.IntRange(min=2), default=30, show_default=True)
@click.option("--jitter", type=click.FloatRange(min=0), default=0.5, show_default=True)
@click.option(
    "--signal-jitter", type=click.FloatRange(min=0), default=0.0, show_default=True,
)
@click.option(
    "--geometry-ids", callback=_parse_ints, default=None,
    help="Template id per bundle, e.g. 0,1,2,2",
)
@click.option(
    "--spacing", type=click.FloatRange(min=0, min_open=True), default=30.0,
    show_default=True, help="mm between bundle templates",
)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "-o", "--out", "out", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--labels-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
)
@click.pass_context
def synth(  # noqa: PLR0913
    ctx: click.Context,
    *,
    bundles: int,
    per_bundle: int,
    points: int,
    jitter: float,
    signal_jitter: float,
    geometry_ids: tuple[int, ...] | None,
    spacing: float,
    seed: int,
    out: Path,
    labels_out: Path | None,
) -> None:
    try:
        spec = SyntheticBundleSpec(
            bundle_count=bundles,
            fibers_per_bundle=per_bundle,
            points_per_fiber=points,
            geometry_jitter=jitter,
            signal_jitter=signal_jitter,
            geometry_ids=geometry_ids,
            bundle_spacing=spacing,
            seed=seed,
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc
    result = _finish(ctx, "synth", run_synth_command(spec, out, labels_out))
    _echo_json(asdict(result))


@main.command(help=_help("gram"))
@click.option("--model", type=MODEL_CHOICE, default="fvar", show_default=True)
@click.option(
    "--in", "fibers_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "-o", "--out", "out", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@_lambda_options
@click.option(
    "--nystrom", type=click.IntRange(min=1), default=None,
    help="Landmark count for a Nystrom approximation",
)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_context
def gram(  # noqa: PLR0913
    ctx: click.Context,
    *,
    model: str,
    fibers_path: Path,
    out: Path,
    lambda_w: float,
    lambda_m: float,
    gamma: float,
    nystrom: int | None,
    seed: int,
    workers: int,
) -> None:
    params = _kernel_params(lambda_w, lambda_m, gamma)
    result = _finish(
        ctx,
        "gram",
        run_gram_command(
            fibers_path,
            out,
            KernelModel(model),
            params,
            workers=workers,
            landmarks=nystrom,
            seed=seed,
        ),
    )
    _echo_json(asdict(result))


@main.command(help=_help("cluster"))
@click.option(
    "--gram", "gram_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--s-max", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--iters", type=click.IntRange(min=1), default=200, show_default=True)
@click.option(
    "--n-init", type=click.IntRange(min=1), default=10, show_default=True,
    help="Restarts; the lowest final objective is kept",
)
@click.option(
    "--dict-iters", type=click.IntRange(min=1), default=1, show_default=True,
)
@click.option(
    "--tol", type=click.FloatRange(min=0, min_open=True), default=1e-6,
    show_default=True,
)
@click.option(
    "--init", "init", type=click.Choice(["kmeans++", "random"]),
    default="kmeans++", show_default=True,
)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "-o", "--out", "out", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.pass_context
def cluster(  # noqa: PLR0913
    ctx: click.Context,
    *,
    gram_path: Path,
    m: int,
    s_max: int,
    iters: int,
    n_init: int,
    dict_iters: int,
    tol: float,
    init: str,
    seed: int,
    out: Path,
) -> None:
    try:
        config = FitConfig.model_validate(
            {
                "m": m,
                "s_max": s_max,
                "max_outer_iters": iters,
                "n_init": n_init,
                "dict_update_iters": dict_iters,
                "objective_tolerance": tol,
                "init": init,
                "seed": seed,
            },
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc
    result = _finish(ctx, "cluster", run_cluster_command(gram_path, out, config))
    _echo_json(asdict(result))


@main.command("eval", help=_help("eval"))
@click.option(
    "--gram", "gram_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--result", "result_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--planted", "planted_path", type=click.Path(dir_okay=False, path_type=Path),
    default=None,
)
@click.pass_context
def evaluate(
    ctx: click.Context,
    *,
    gram_path: Path,
    result_path: Path,
    planted_path: Path | None,
) -> None:
    report = _finish(
        ctx, "eval", run_eval_command(gram_path, result_path, planted_path),
    )
    _echo_json(report.to_dict())


@main.command(help=_help("sweep"))
@click.option(
    "--fibers", "fibers_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option("--model", type=MODEL_CHOICE, default="fvar", show_default=True)
@click.option(
    "--lambda-w", "lambda_ws", callback=_parse_floats,
    default=",".join(str(v) for v in LAMBDA_W_SWEEP), show_default=True,
)
@click.option(
    "--lambda-m", "lambda_ms", callback=_parse_floats,
    default=",".join(str(v) for v in LAMBDA_M_SWEEP), show_default=True,
)
@click.option("--pairs", callback=_parse_pairs, required=True, help="e.g. 0-1,2-3")
@click.option("--gamma", type=float, default=DEFAULT_GAMMA, show_default=True)
@click.option(
    "-o", "--out", "out", type=click.Path(dir_okay=False, path_type=Path),
    default=None, help="CSV path (stdout when omitted)",
)
@click.pass_context
def sweep(  # noqa: PLR0913
    ctx: click.Context,
    *,
    fibers_path: Path,
    model: str,
    lambda_ws: tuple[float, ...],
    lambda_ms: tuple[float, ...],
    pairs: tuple[tuple[int, int], ...],
    gamma: float,
    out: Path | None,
) -> None:
    result = _finish(
        ctx,
        "sweep",
        run_sweep_command(
            fibers_path, KernelModel(model), lambda_ws, lambda_ms, pairs, gamma, out,
        ),
    )
    if out is None:
        click.echo(result.csv_text, nl=False)


def _comparison_table(result: CompareCommandResult) -> Table:
    table = Table(title="Mean silhouette per model")
    for column in ("model", "m", "mean", "std", "runs"):
        table.add_column(column, justify="left" if column == "model" else "right")
    for row in result.rows:
        table.add_row(
            row.model.value,
            str(row.m),
            f"{row.mean_silhouette:.4f}",
            f"{row.std_silhouette:.4f}",
            str(row.runs),
        )
    return table


@main.command(help=_help("compare"))
@click.option(
    "--fibers", "fibers_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--models", callback=_parse_models, default="fvar,var,signal,mcp",
    show_default=True,
)
@click.option(
    "--m", "m_values", type=click.IntRange(min=1), multiple=True, required=True,
)
@click.option("--seeds", callback=_parse_ints, default="0,1,2", show_default=True)
@click.option("--s-max", type=click.IntRange(min=1), default=1, show_default=True)
@_lambda_options
@click.option(
    "--json-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
)
@_sample_options
@click.pass_context
def compare(  # noqa: PLR0913
    ctx: click.Context,
    *,
    fibers_path: Path,
    models: tuple[KernelModel, ...],
    m_values: tuple[int, ...],
    seeds: tuple[int, ...],
    s_max: int,
    lambda_w: float,
    lambda_m: float,
    gamma: float,
    json_out: Path | None,
    sample: int | None,
    sample_seed: int,
) -> None:
    params = _kernel_params(lambda_w, lambda_m, gamma)
    result = _finish(
        ctx,
        "compare",
        run_compare_command(
            fibers_path,
            models,
            m_values,
            _seeds(seeds),
            s_max,
            params,
            json_out,
            sample=sample,
            sample_seed=sample_seed,
        ),
    )
    Console().print(_comparison_table(result))


@main.command("lambda-sweep", help=_help("lambda-sweep"))
@click.option(
    "--fibers", "fibers_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--lambda-m", "lambda_ms", callback=_parse_floats,
    default=",".join(str(v) for v in LAMBDA_M_SWEEP), show_default=True,
)
@click.option(
    "--m", "m_values", type=click.IntRange(min=1), multiple=True, required=True,
)
@click.option("--seeds", callback=_parse_ints, default="0,1,2", show_default=True)
@click.option(
    "--lambda-w", "lambda_w", type=float, default=DEFAULT_LAMBDA_W, show_default=True,
)
@_sample_options
@click.pass_context
def lambda_sweep(  # noqa: PLR0913
    ctx: click.Context,
    *,
    fibers_path: Path,
    lambda_ms: tuple[float, ...],
    m_values: tuple[int, ...],
    seeds: tuple[int, ...],
    lambda_w: float,
    sample: int | None,
    sample_seed: int,
) -> None:
    params = _kernel_params(lambda_w, DEFAULT_LAMBDA_M, DEFAULT_GAMMA)
    result = _finish(
        ctx,
        "lambda-sweep",
        run_lambda_sweep_command(
            fibers_path,
            lambda_ms,
            m_values,
            _seeds(seeds),
            params,
            sample=sample,
            sample_seed=sample_seed,
        ),
    )
    click.echo(result.json_text, nl=False)


def _seeds(seeds: Sequence[int] | None) -> tuple[int, ...]:
    if not seeds or any(seed < 0 for seed in seeds):
        msg = "--seeds needs at least one non-negative integer"
        raise click.UsageError(msg)
    return tuple(seeds)


if __name__ == "__main__":  # pragma: no cover
    main()
