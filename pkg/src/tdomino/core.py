"""Shared domain types, objective canonicalization, and feature-grid geometry."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


class ConfigurationError(ValueError):
    """Raised when a problem/grid/run configuration is inconsistent."""


class EvaluationError(ValueError):
    """Raised when an evaluation produces unusable values (non-finite features, etc.)."""


MAXIMIZE = "maximize"
MINIMIZE = "minimize"


@dataclass(frozen=True)
class GridSpec:
    """Regular grid over feature space: per-axis bin counts and (lo, hi) ranges."""

    dims: tuple[int, ...]
    ranges: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.dims) != len(self.ranges):
            raise ConfigurationError("grid dims and ranges must have equal length")
        if any(d < 1 for d in self.dims):
            raise ConfigurationError(f"bin counts must be >= 1, got {self.dims}")
        if any(lo >= hi for lo, hi in self.ranges):
            raise ConfigurationError(f"feature ranges must satisfy lo < hi, got {self.ranges}")

    @property
    def n_features(self) -> int:
        return len(self.dims)

    @property
    def n_bins(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class ProblemSpec:
    """Static description of a benchmark: genome, objectives, features."""

    genome_length: int
    bounds: tuple[tuple[float, float], ...]
    n_objectives: int
    directions: tuple[str, ...]
    n_features: int
    feature_ranges: tuple[tuple[float, float], ...]
    feature_extractor: str

    def __post_init__(self):
        if len(self.directions) != self.n_objectives:
            raise ConfigurationError("one direction per objective required")
        if any(d not in (MAXIMIZE, MINIMIZE) for d in self.directions):
            raise ConfigurationError(f"directions must be maximize/minimize, got {self.directions}")
        if len(self.bounds) != self.genome_length:
            raise ConfigurationError("one (lo, hi) bound pair per parameter required")

    @property
    def lower(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.bounds])

    @property
    def upper(self) -> np.ndarray:
        return np.array([hi for _, hi in self.bounds])


@dataclass(frozen=True)
class EvaluatedSolution:
    """A genome together with its canonical (maximization-form) objectives,
    raw objective values, feature coordinates, and constraint violation."""

    genome: np.ndarray
    objectives: np.ndarray       # canonical, all-maximize
    raw_objectives: np.ndarray   # in the problem's native directions
    features: np.ndarray
    violation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "genome", np.asarray(self.genome, dtype=float))
        object.__setattr__(self, "objectives", np.asarray(self.objectives, dtype=float))
        object.__setattr__(self, "raw_objectives", np.asarray(self.raw_objectives, dtype=float))
        object.__setattr__(self, "features", np.asarray(self.features, dtype=float))
        if self.violation < 0:
            raise EvaluationError(f"violation must be non-negative, got {self.violation}")

    @property
    def feasible(self) -> bool:
        return self.violation == 0.0


def canonicalize(raw, directions) -> np.ndarray:
    """Map raw objective values into maximization form (minimized entries negated)."""
    raw = np.asarray(raw, dtype=float)
    if raw.shape[-1] != len(directions):
        raise ConfigurationError(
            f"objective vector has {raw.shape[-1]} entries but {len(directions)} directions declared"
        )
    signs = np.array([1.0 if d == MAXIMIZE else -1.0 for d in directions])
    return raw * signs


def bin_index(features, grid: GridSpec) -> tuple[int, ...]:
    """Assign feature coordinates to a grid bin, clamping out-of-range values to edge bins."""
    features = np.asarray(features, dtype=float)
    if features.shape != (grid.n_features,):
        raise ConfigurationError(
            f"feature vector of length {features.shape} does not match grid with {grid.n_features} axes"
        )
    if not np.all(np.isfinite(features)):
        raise EvaluationError(f"non-finite feature coordinates: {features}")
    idx = []
    for f, bins, (lo, hi) in zip(features, grid.dims, grid.ranges):
        i = int(np.floor((f - lo) / (hi - lo) * bins))
        idx.append(min(max(i, 0), bins - 1))
    return tuple(idx)


def neighbors_within(center: tuple[int, ...], radius: int, grid: GridSpec) -> list[tuple[int, ...]]:
    """All bins within Chebyshev distance `radius` of `center` (center excluded),
    truncated at grid edges, in lexicographic order."""
    if radius <= 0:
        return []
    axes = [
        range(max(0, c - radius), min(d, c + radius + 1))
        for c, d in zip(center, grid.dims)
    ]
    return [idx for idx in itertools.product(*axes) if idx != center]


def clip_to_bounds(genomes: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return np.clip(genomes, lower, upper)
