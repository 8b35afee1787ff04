"""Shared type definitions for the fvclust pipeline."""
from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 compatibility
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum: str() and format() yield the value."""

        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]

UNASSIGNED = -1

DEFAULT_LAMBDA_W = 7.0
DEFAULT_LAMBDA_M = 0.01
DEFAULT_GAMMA = 0.007

LAMBDA_W_SWEEP = (3.0, 5.0, 7.0, 9.0, 11.0)
LAMBDA_M_SWEEP = (0.001, 0.005, 0.01, 0.05, 0.1)


def _frozen_float(values: object, ndim: int) -> FloatArray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != ndim:
        msg = f"expected a {ndim}-d array, got shape {arr.shape}"
        raise ValueError(msg)
    arr.setflags(write=False)
    return arr


def _frozen_int(values: object) -> IntArray:
    arr = np.array(values, dtype=np.int64, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


class KernelModel(StrEnum):
    """Pairwise fiber comparison models, valued by their CLI tag."""

    FUNCTIONAL_VARIFOLD = "fvar"
    VARIFOLD = "var"
    SIGNAL_ONLY = "signal"
    MCP_RBF = "mcp"

    @property
    def tag_byte(self) -> int:
        """One-byte identifier used in the binary Gram file header."""
        return _MODEL_TAG_BYTES[self]

    @classmethod
    def from_tag_byte(cls, tag: int) -> KernelModel | None:
        """Reverse of tag_byte; None for unknown tags."""
        for model, value in _MODEL_TAG_BYTES.items():
            if value == tag:
                return model
        return None

    @property
    def is_psd(self) -> bool:
        """True for models whose Gram matrix is PSD by construction."""
        return self is not KernelModel.MCP_RBF


_MODEL_TAG_BYTES: dict[KernelModel, int] = {
    KernelModel.FUNCTIONAL_VARIFOLD: 0,
    KernelModel.VARIFOLD: 1,
    KernelModel.SIGNAL_ONLY: 2,
    KernelModel.MCP_RBF: 3,
}


class KernelParams(BaseModel):
    """Kernel bandwidths: spatial (mm), signal (signal units), MCP RBF gamma."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    lambda_w: float = Field(default=DEFAULT_LAMBDA_W, gt=0)
    lambda_m: float = Field(default=DEFAULT_LAMBDA_M, gt=0)
    gamma: float = Field(default=DEFAULT_GAMMA, gt=0)


class SignalProfile(BaseModel):
    """Along-fiber signal template: base + amplitude * sin(2 pi f t + phase).

    t is the normalised vertex parameter in [0, 1]; values are clipped
    to [0, 1] like a GFA map.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    base: float = Field(default=0.5, ge=0, le=1)
    amplitude: float = Field(default=0.15, ge=0)
    frequency: float = Field(default=1.0, ge=0)
    phase: float = 0.0

    def evaluate(self, t: FloatArray) -> FloatArray:
        """Sample the profile at parameters t."""
        raw = self.base + self.amplitude * np.sin(
            2.0 * np.pi * self.frequency * t + self.phase,
        )
        return np.clip(raw, 0.0, 1.0)


class SyntheticBundleSpec(BaseModel):
    """Recipe for a synthetic fiber set with planted bundle structure.

    geometry_ids maps each bundle to a template curve; bundles sharing
    an id have identical geometry and differ only in signal.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    bundle_count: int = Field(ge=1)
    fibers_per_bundle: int = Field(ge=1)
    points_per_fiber: int = Field(default=30, ge=2)
    geometry_jitter: float = Field(default=0.5, ge=0)
    signal_jitter: float = Field(default=0.0, ge=0)
    bundle_spacing: float = Field(default=30.0, gt=0)
    signal_profiles: tuple[SignalProfile, ...] | None = None
    geometry_ids: tuple[int, ...] | None = None
    seed: int = 0

    @model_validator(mode="after")
    def _check_per_bundle_lengths(self) -> SyntheticBundleSpec:
        if (
            self.signal_profiles is not None
            and len(self.signal_profiles) != self.bundle_count
        ):
            msg = "signal_profiles must have one entry per bundle"
            raise ValueError(msg)
        if self.geometry_ids is not None:
            if len(self.geometry_ids) != self.bundle_count:
                msg = "geometry_ids must have one entry per bundle"
                raise ValueError(msg)
            if any(g < 0 for g in self.geometry_ids):
                msg = "geometry_ids must be non-negative"
                raise ValueError(msg)
        return self

    def resolved_profiles(self) -> tuple[SignalProfile, ...]:
        """Explicit profiles, or overlapping sinusoids differing by phase."""
        if self.signal_profiles is not None:
            return self.signal_profiles
        return tuple(
            SignalProfile(
                base=0.5,
                amplitude=0.15,
                frequency=1.0 + 0.5 * (b % 3),
                phase=b * np.pi / 2.0,
            )
            for b in range(self.bundle_count)
        )

    def resolved_geometry_ids(self) -> tuple[int, ...]:
        """Explicit template ids, or one template per bundle."""
        if self.geometry_ids is not None:
            return self.geometry_ids
        return tuple(range(self.bundle_count))


class FitConfig(BaseModel):
    """Dictionary-learning settings.

    atom_floor is the positive mass spread over the initial and reseeded
    one-hot atoms so that multiplicative updates can move them. n_init
    restarts run from distinct seeds; the lowest final objective wins.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    m: int = Field(ge=1)
    s_max: int = Field(default=1, ge=1)
    max_outer_iters: int = Field(default=200, ge=1)
    dict_update_iters: int = Field(default=1, ge=1)
    objective_tolerance: float = Field(default=1e-6, gt=0)
    seed: int = Field(default=0, ge=0)
    atom_floor: float = Field(default=1e-3, ge=0)
    n_init: int = Field(default=10, ge=1)
    init: Literal["kmeans++", "random"] = "kmeans++"

    @model_validator(mode="after")
    def _check_sparsity(self) -> FitConfig:
        if self.s_max > self.m:
            msg = f"s_max ({self.s_max}) must not exceed m ({self.m})"
            raise ValueError(msg)
        return self


@dataclass(frozen=True, eq=False)
class Fiber:
    """Ordered 3D polyline (mm) with one scalar signal value per vertex."""

    id: int
    points: FloatArray
    signal: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _frozen_float(self.points, 2))
        object.__setattr__(self, "signal", _frozen_float(self.signal, 1))

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True, eq=False)
class SegmentedFiber:
    """Per-segment centers x_p, tangents beta_p, lengths c_p, signal f_p."""

    centers: FloatArray
    tangents: FloatArray
    lengths: FloatArray
    center_signal: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", _frozen_float(self.centers, 2))
        object.__setattr__(self, "tangents", _frozen_float(self.tangents, 2))
        object.__setattr__(self, "lengths", _frozen_float(self.lengths, 1))
        object.__setattr__(
            self, "center_signal", _frozen_float(self.center_signal, 1),
        )

    @property
    def segment_count(self) -> int:
        return int(self.lengths.shape[0])


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric n x n matrix of pairwise kernel inner products Q."""

    values: FloatArray
    model: KernelModel
    params: KernelParams
    approximate: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_float(self.values, 2))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True, eq=False)
class Dictionary:
    """Non-negative n x m atom matrix A; each atom is a fiber combination."""

    atoms: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", _frozen_float(self.atoms, 2))

    @property
    def n(self) -> int:
        return int(self.atoms.shape[0])

    @property
    def m(self) -> int:
        return int(self.atoms.shape[1])


@dataclass(frozen=True, eq=False)
class SparseCodes:
    """Non-negative m x n code matrix W with at most s_max non-zeros per column."""

    codes: FloatArray
    s_max: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "codes", _frozen_float(self.codes, 2))

    @property
    def m(self) -> int:
        return int(self.codes.shape[0])

    @property
    def n(self) -> int:
        return int(self.codes.shape[1])

    def nonzeros_per_column(self) -> IntArray:
        return np.count_nonzero(self.codes, axis=0).astype(np.int64)


@dataclass(frozen=True, eq=False)
class FitResult:
    """Outcome of dictionary learning.

    violations counts alternation steps where the objective rose by
    more than 1e-9; reseeded counts dead atoms replaced. seed is the
    restart seed that produced this run.
    """

    dictionary: Dictionary
    codes: SparseCodes
    objective_trace: tuple[float, ...]
    iterations_run: int
    violations: int = 0
    reseeded: int = 0
    seed: int = 0

    def memberships(self) -> FloatArray:
        """Soft cluster memberships: W columns normalised to sum 1."""
        w = np.asarray(self.codes.codes)
        totals = w.sum(axis=0, keepdims=True)
        return np.divide(w, totals, out=np.zeros_like(w), where=totals > 0)


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """Hard cluster labels in [0, m); UNASSIGNED marks empty code columns."""

    labels: IntArray
    source: Literal["codes", "planted"]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", _frozen_int(self.labels))

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_unassigned(self) -> int:
        return int(np.count_nonzero(self.labels == UNASSIGNED))


@dataclass(frozen=True)
class SilhouetteReport:
    """Per-fiber silhouette values and their means."""

    per_fiber: tuple[float, ...]
    mean: float
    per_cluster_mean: dict[int, float]
    n_unassigned: int = 0


@dataclass(frozen=True)
class RunEvent:
    """Structured run-log entry for JSONL logging."""

    timestamp: str
    command: str
    event_type: str
    payload: dict[str, object] = field(default_factory=dict)

    def to_jsonl(self) -> str:
        """Serialize to single-line JSON for JSONL format."""
        return json.dumps(asdict(self), separators=(",", ":"))
