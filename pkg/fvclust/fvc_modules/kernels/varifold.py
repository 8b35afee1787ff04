"""Varifold-family inner products between segmented fibers.

Each model is a double sum over segment pairs (p, q) of
kernel factors times the segment lengths c_p d_q:

- spatial Gaussian  exp(-|x_p - y_q|^2 / lambda_W^2)
- signal Gaussian   exp(-(f_p - g_q)^2 / lambda_M^2)
- Cauchy-Binet      (beta_p . gamma_q / (c_p d_q))^2

functional varifolds use all three, varifolds drop the signal factor,
the signal-only model keeps just the signal factor.

Every P x Q term matrix for (b, a) is the exact transpose of the one
for (a, b), and totals use math.fsum, so K(a, b) == K(b, a) bit for bit.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial.distance import cdist

from fvclust.fvc_modules.types import FloatArray, KernelParams, SegmentedFiber


def _total(terms: FloatArray) -> float:
    return math.fsum(terms.ravel().tolist())


def spatial_factor(
    a: SegmentedFiber,
    b: SegmentedFiber,
    lambda_w: float,
) -> FloatArray:
    """P x Q Gaussian weights on segment-center distances."""
    sq = cdist(a.centers, b.centers, "sqeuclidean")
    return np.exp(-sq / lambda_w**2)


def signal_factor(
    a: SegmentedFiber,
    b: SegmentedFiber,
    lambda_m: float,
) -> FloatArray:
    """P x Q Gaussian weights on center-signal differences."""
    diff = np.subtract.outer(a.center_signal, b.center_signal)
    return np.exp(-(diff**2) / lambda_m**2)


def weighted_cauchy_binet(a: SegmentedFiber, b: SegmentedFiber) -> FloatArray:
    """(beta_p . gamma_q / (c_p d_q))^2 * c_p d_q, i.e. dot^2 / (c_p d_q)."""
    dots = np.sum(a.tangents[:, None, :] * b.tangents[None, :, :], axis=-1)
    return dots**2 / np.outer(a.lengths, b.lengths)


def fvar_inner(
    a: SegmentedFiber,
    b: SegmentedFiber,
    params: KernelParams,
) -> float:
    """Functional-varifold inner product (geometry and signal)."""
    terms = (
        signal_factor(a, b, params.lambda_m)
        * spatial_factor(a, b, params.lambda_w)
        * weighted_cauchy_binet(a, b)
    )
    return _total(terms)


def var_inner(
    a: SegmentedFiber,
    b: SegmentedFiber,
    params: KernelParams,
) -> float:
    """Varifold inner product (geometry only)."""
    terms = spatial_factor(a, b, params.lambda_w) * weighted_cauchy_binet(a, b)
    return _total(terms)


def signal_inner(
    a: SegmentedFiber,
    b: SegmentedFiber,
    params: KernelParams,
) -> float:
    """Signal-only inner product, weighted by segment lengths."""
    terms = signal_factor(a, b, params.lambda_m) * np.outer(a.lengths, b.lengths)
    return _total(terms)
