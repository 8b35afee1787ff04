"""Alternating sparse coding and dictionary update.

Each alternation: code every fiber with kOMP (a fiber keeps its
previous code when the new one reconstructs it worse), update the
atoms multiplicatively, renormalize, reseed dead atoms, and record
the objective. Stops after max_outer_iters alternations or when the
relative decrease drops below objective_tolerance. The whole
alternation is repeated for n_init seeds.
"""
from __future__ import annotations

import logging

import numpy as np
from returns.result import Failure, Result, Success

from fvclust.fvc_modules.dictionary.init import init_atoms
from fvclust.fvc_modules.dictionary.komp import sparse_code_all
from fvclust.fvc_modules.dictionary.objective import residual_terms
from fvclust.fvc_modules.dictionary.update import (
    normalize_atoms,
    reseed_dead_atoms,
    update_dictionary,
)
from fvclust.fvc_modules.errors import FvcError
from fvclust.fvc_modules.types import (
    Dictionary,
    FitConfig,
    FitResult,
    GramMatrix,
    SparseCodes,
)

logger = logging.getLogger(__name__)

MONOTONE_TOLERANCE = 1e-9


def keep_better_codes(
    q: GramMatrix,
    a: Dictionary,
    previous: SparseCodes,
    proposed: SparseCodes,
) -> SparseCodes:
    """Per fiber, the code with the smaller reconstruction error."""
    Q = np.asarray(q.values)
    A = np.asarray(a.atoms)
    old = residual_terms(Q, A, np.asarray(previous.codes))
    new = residual_terms(Q, A, np.asarray(proposed.codes))
    take_new = new <= old
    codes = np.where(take_new[None, :], proposed.codes, previous.codes)
    return SparseCodes(codes=codes, s_max=proposed.s_max)


def _initial_dictionary(
    q: GramMatrix,
    config: FitConfig,
    seed: int,
) -> Result[Dictionary, FvcError]:
    seeded = init_atoms(
        q.n,
        config.m,
        seed,
        q if config.init == "kmeans++" else None,
    )
    if isinstance(seeded, Failure):
        return seeded
    atoms = np.asarray(seeded.unwrap().atoms) + config.atom_floor
    empty = SparseCodes(codes=np.zeros((config.m, q.n)), s_max=config.s_max)
    normalized, _ = normalize_atoms(q, Dictionary(atoms=atoms), empty)
    return Success(normalized)


def _objective_value(q: GramMatrix, a: Dictionary, w: SparseCodes) -> float:
    terms = residual_terms(
        np.asarray(q.values), np.asarray(a.atoms), np.asarray(w.codes),
    )
    return 0.5 * float(terms.sum())


def restart_seeds(config: FitConfig) -> tuple[int, ...]:
    """config.seed first, then n_init - 1 seeds spawned from it."""
    spawned = np.random.SeedSequence(config.seed).generate_state(config.n_init - 1)
    return (config.seed, *(int(s) for s in spawned))


def _fit_once(
    q: GramMatrix,
    config: FitConfig,
    seed: int,
) -> Result[FitResult, FvcError]:
    initial = _initial_dictionary(q, config, seed)
    if isinstance(initial, Failure):
        return initial
    atoms = initial.unwrap()
    codes = SparseCodes(codes=np.zeros((config.m, q.n)), s_max=config.s_max)

    previous = _objective_value(q, atoms, codes)
    trace: list[float] = []
    violations = 0
    reseeded = 0
    for iteration in range(1, config.max_outer_iters + 1):
        proposed = sparse_code_all(q, atoms, config.s_max)
        codes = keep_better_codes(q, atoms, codes, proposed)
        atoms = update_dictionary(q, atoms, codes, config.dict_update_iters)
        atoms, codes = normalize_atoms(q, atoms, codes)
        atoms, codes, dead = reseed_dead_atoms(
            q, atoms, codes, floor=config.atom_floor,
        )
        reseeded += len(dead)

        current = _objective_value(q, atoms, codes)
        trace.append(current)
        logger.debug("seed %d iteration %d objective %.12g", seed, iteration, current)
        if current > previous + MONOTONE_TOLERANCE * max(1.0, abs(previous)):
            violations += 1
            logger.warning(
                "Objective increased at iteration %d: %.12g -> %.12g",
                iteration,
                previous,
                current,
            )
        decrease = (previous - current) / max(abs(previous), np.finfo(float).tiny)
        previous = current
        if decrease < config.objective_tolerance:
            break

    return Success(
        FitResult(
            dictionary=atoms,
            codes=codes,
            objective_trace=tuple(trace),
            iterations_run=len(trace),
            violations=violations,
            reseeded=reseeded,
            seed=seed,
        ),
    )


def fit(q: GramMatrix, config: FitConfig) -> Result[FitResult, FvcError]:
    """Learn m atoms and sparse codes from the Gram matrix alone.

    Runs one alternation per restart seed and keeps the run with the
    lowest final objective (the earliest one on ties).
    """
    if q.n < config.m:
        return Failure(
            FvcError(
                operation="fit",
                error_type="MoreAtomsThanFibers",
                message=f"m={config.m} exceeds the {q.n} fibers in the Gram matrix",
                context={"n": q.n, "m": config.m},
            ),
        )
    runs: list[FitResult] = []
    for seed in restart_seeds(config):
        run = _fit_once(q, config, seed)
        if isinstance(run, Failure):
            return run
        runs.append(run.unwrap())
        logger.debug(
            "restart seed %d final objective %.12g",
            seed,
            runs[-1].objective_trace[-1],
        )
    return Success(min(runs, key=lambda fitted: fitted.objective_trace[-1]))
