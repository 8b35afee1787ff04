"""Dictionary update and gauge fixing.

Multiplicative update A_ij <- A_ij (Q W^T)_ij / ((Q A W W^T)_ij + eps)
keeps A non-negative and, for non-negative Q, does not increase the
objective with W fixed. Atoms are then scaled to unit RKHS norm with
the inverse scaling applied to the rows of W, so AW is unchanged.
"""
from __future__ import annotations

import logging

import numpy as np

from fvclust.fvc_modules.dictionary.objective import residual_terms
from fvclust.fvc_modules.types import (
    Dictionary,
    FloatArray,
    GramMatrix,
    SparseCodes,
)

logger = logging.getLogger(__name__)

DENOMINATOR_GUARD = 1e-12
NORM_FLOOR = 1e-150


def update_dictionary(
    q: GramMatrix,
    a: Dictionary,
    w: SparseCodes,
    iters: int,
) -> Dictionary:
    """Apply the multiplicative atom update iters times with W fixed."""
    Q = np.asarray(q.values)
    W = np.asarray(w.codes)
    A = np.array(a.atoms, copy=True)
    # Nystrom approximations can carry small negative entries.
    numerator = np.maximum(Q @ W.T, 0.0)
    WWt = W @ W.T
    for _ in range(iters):
        denominator = Q @ A @ WWt
        A = A * numerator / (np.maximum(denominator, 0.0) + DENOMINATOR_GUARD)
    return Dictionary(atoms=A)


def atom_norms(q: GramMatrix, a: Dictionary) -> FloatArray:
    """RKHS norm sqrt(a_j^T Q a_j) of every atom."""
    A = np.asarray(a.atoms)
    sq = np.sum(A * (np.asarray(q.values) @ A), axis=0)
    return np.sqrt(np.maximum(sq, 0.0))


def normalize_atoms(
    q: GramMatrix,
    a: Dictionary,
    w: SparseCodes,
) -> tuple[Dictionary, SparseCodes]:
    """Unit-norm atoms with compensating W row scaling.

    Atoms with (numerically) zero norm are left as they are.
    """
    norms = atom_norms(q, a)
    scale = np.where(norms > NORM_FLOOR, norms, 1.0)
    A = np.asarray(a.atoms) / scale[None, :]
    W = np.asarray(w.codes) * scale[:, None]
    return Dictionary(atoms=A), SparseCodes(codes=W, s_max=w.s_max)


def reseed_dead_atoms(
    q: GramMatrix,
    a: Dictionary,
    w: SparseCodes,
    *,
    floor: float = 0.0,
) -> tuple[Dictionary, SparseCodes, list[int]]:
    """Replace unused atoms by the worst-reconstructed fibers.

    An atom is dead when its W row is all zero or its norm vanished.
    Each one becomes the one-hot of a distinct fiber, taken in
    decreasing order of residual, plus floor on every entry, scaled
    to unit norm. Its W row is zeroed, so the objective is unchanged.
    """
    W = np.array(w.codes, copy=True)
    A = np.array(a.atoms, copy=True)
    norms = atom_norms(q, a)
    dead = [
        j
        for j in range(a.m)
        if not np.any(W[j] > 0) or norms[j] <= NORM_FLOOR
    ]
    if not dead:
        return a, w, []

    Q = np.asarray(q.values)
    residuals = residual_terms(Q, np.asarray(a.atoms), np.asarray(w.codes))
    order = np.argsort(-residuals, kind="stable")
    diag = np.diag(Q)
    candidates = iter(int(k) for k in order if diag[k] > 0)
    reseeded: list[int] = []
    for j in dead:
        fiber = next(candidates, None)
        if fiber is None:
            break
        atom = np.full(q.n, floor)
        atom[fiber] += 1.0
        norm = float(np.sqrt(max(atom @ Q @ atom, 0.0)))
        A[:, j] = atom / norm if norm > NORM_FLOOR else atom
        W[j] = 0.0
        reseeded.append(j)
    if reseeded:
        logger.warning("Reseeded %d dead atom(s): %s", len(reseeded), reseeded)
    return Dictionary(atoms=A), SparseCodes(codes=W, s_max=w.s_max), reseeded
