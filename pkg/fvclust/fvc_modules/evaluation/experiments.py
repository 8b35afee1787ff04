"""Model comparison runs: cluster each model's Gram and score it.

Every run clusters with the model's own Gram and scores the result in
that same Gram's kernel distance.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.dictionary.fit import fit
from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.evaluation.assign import hard_assign
from fvclust.fvc_modules.evaluation.silhouette import silhouette
from fvclust.fvc_modules.gram.assemble import compute_gram
from fvclust.fvc_modules.types import (
    Fiber,
    FitConfig,
    GramMatrix,
    KernelModel,
    KernelParams,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComparisonRow:
    """Mean silhouette of one (model, m) cell over all seeds."""

    model: KernelModel
    m: int
    mean_silhouette: float
    std_silhouette: float
    runs: int


@dataclass(frozen=True)
class LambdaRow:
    """Mean silhouettes at one (lambda_m, m) for fVar, Var and signal-only."""

    lambda_m: float
    m: int
    fvar_silhouette: float
    var_silhouette: float
    signal_silhouette: float


def seeded_silhouettes(
    q: GramMatrix,
    m: int,
    s_max: int,
    seeds: Sequence[int],
) -> Result[list[float], FvcError]:
    """Mean silhouette of fit + hard_assign for each seed."""
    scores: list[float] = []
    for seed in seeds:
        fitted = fit(q, FitConfig(m=m, s_max=min(s_max, m), seed=seed))
        if isinstance(fitted, Failure):
            return fitted
        report = silhouette(q, hard_assign(fitted.unwrap().codes))
        if isinstance(report, Failure):
            return Failure(
                report.failure().with_context(
                    model=q.model.value, m=m, seed=seed,
                ),
            )
        scores.append(report.unwrap().mean)
    return Success(scores)


def compare_models(  # noqa: PLR0913
    fibers: Sequence[Fiber],
    models: Sequence[KernelModel],
    m_values: Sequence[int],
    seeds: Sequence[int],
    s_max: int,
    params: KernelParams,
) -> Result[list[ComparisonRow], FvcError]:
    """One row per (model, m), in the given model and m order."""
    rows: list[ComparisonRow] = []
    for model in models:
        gram = compute_gram(fibers, model, params)
        if isinstance(gram, Failure):
            return gram
        q = gram.unwrap()
        for m in m_values:
            scores = seeded_silhouettes(q, m, s_max, seeds)
            if isinstance(scores, Failure):
                return scores
            values = np.asarray(scores.unwrap())
            logger.debug(
                "%s m=%d silhouettes %s", model.value, m, values.tolist(),
            )
            rows.append(
                ComparisonRow(
                    model=model,
                    m=m,
                    mean_silhouette=float(values.mean()),
                    std_silhouette=float(values.std()),
                    runs=int(values.size),
                ),
            )
    return Success(rows)


def _mean_silhouette(
    q: GramMatrix,
    m: int,
    seeds: Sequence[int],
) -> Result[float, FvcError]:
    return seeded_silhouettes(q, m, 1, seeds).map(
        lambda scores: float(np.mean(scores)),
    )


def lambda_m_silhouette(
    fibers: Sequence[Fiber],
    lambda_ms: Sequence[float],
    m_values: Sequence[int],
    seeds: Sequence[int],
    params: KernelParams | None = None,
) -> Result[list[LambdaRow], FvcError]:
    """fVar, Var and signal-only mean silhouette per (lambda_m, m).

    Rows come lambda_m-major in the given orders. Var ignores lambda_m,
    so its Gram and scores are computed once per m; the fVar and
    signal-only Grams are recomputed for every lambda_m.
    """
    base = params or KernelParams()
    var_gram = compute_gram(fibers, KernelModel.VARIFOLD, base)
    if isinstance(var_gram, Failure):
        return var_gram
    var_means: dict[int, float] = {}
    for m in m_values:
        var_mean = _mean_silhouette(var_gram.unwrap(), m, seeds)
        if isinstance(var_mean, Failure):
            return var_mean
        var_means[m] = var_mean.unwrap()

    rows: list[LambdaRow] = []
    for lambda_m in lambda_ms:
        tuned = base.model_copy(update={"lambda_m": lambda_m})
        grams: dict[KernelModel, GramMatrix] = {}
        for model in (KernelModel.FUNCTIONAL_VARIFOLD, KernelModel.SIGNAL_ONLY):
            gram = compute_gram(fibers, model, tuned)
            if isinstance(gram, Failure):
                return gram
            grams[model] = gram.unwrap()
        for m in m_values:
            fvar = _mean_silhouette(grams[KernelModel.FUNCTIONAL_VARIFOLD], m, seeds)
            if isinstance(fvar, Failure):
                return fvar
            signal = _mean_silhouette(grams[KernelModel.SIGNAL_ONLY], m, seeds)
            if isinstance(signal, Failure):
                return signal
            logger.debug(
                "lambda_m=%g m=%d fvar %.4f var %.4f signal %.4f",
                lambda_m,
                m,
                fvar.unwrap(),
                var_means[m],
                signal.unwrap(),
            )
            rows.append(
                LambdaRow(
                    lambda_m=lambda_m,
                    m=m,
                    fvar_silhouette=fvar.unwrap(),
                    var_silhouette=var_means[m],
                    signal_silhouette=signal.unwrap(),
                ),
            )
    return Success(rows)
