"""MAP-Elites baselines with scalar ranking: single objective and naive weighted sum."""

from __future__ import annotations

import numpy as np

from .archive import InsertOutcome, OutcomeKind
from .core import ConfigurationError, EvaluatedSolution, GridSpec, bin_index


def default_weights(n_objectives: int) -> np.ndarray:
    """(1, 10, 100, ...): each additional objective up-weighted by an order of magnitude."""
    return 10.0 ** np.arange(n_objectives)


def weighted_sum(objectives, weights) -> float:
    objectives = np.asarray(objectives, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if objectives.shape != weights.shape:
        raise ConfigurationError(
            f"{objectives.shape[0]} objectives but {weights.shape[0]} weights"
        )
    return float(objectives @ weights)


class ScalarArchive:
    """Grid archive ranked by a scalar fitness over canonical objectives."""

    def __init__(self, grid: GridSpec, n_objectives: int, *,
                 objective_index: int | None = None, weights=None):
        if (objective_index is None) == (weights is None):
            raise ConfigurationError("give exactly one of objective_index or weights")
        self.grid = grid
        self.n_objectives = n_objectives
        self.objective_index = objective_index
        self.weights = None if weights is None else np.asarray(weights, dtype=float)
        if self.weights is not None and self.weights.shape != (n_objectives,):
            raise ConfigurationError("one weight per objective required")
        if objective_index is not None and not 0 <= objective_index < n_objectives:
            raise ConfigurationError(f"objective index {objective_index} out of range")
        self._elites: dict[tuple[int, ...], tuple[EvaluatedSolution, float]] = {}

    @classmethod
    def single(cls, grid, n_objectives, index=0):
        return cls(grid, n_objectives, objective_index=index)

    @classmethod
    def summed(cls, grid, n_objectives, weights=None):
        if weights is None:
            weights = default_weights(n_objectives)
        return cls(grid, n_objectives, weights=weights)

    def __len__(self):
        return len(self._elites)

    @property
    def n_bins(self) -> int:
        return self.grid.n_bins

    def fitness(self, solution: EvaluatedSolution) -> float:
        if self.objective_index is not None:
            return float(solution.objectives[self.objective_index])
        return weighted_sum(solution.objectives, self.weights)

    def elite_at(self, idx):
        entry = self._elites.get(idx)
        return None if entry is None else entry[0]

    def items(self):
        return ((k, v[0]) for k, v in self._elites.items())

    def elites(self):
        return (v[0] for v in self._elites.values())

    def occupied_bins(self):
        return sorted(self._elites)

    def random_elite(self, rng: np.random.Generator) -> EvaluatedSolution:
        keys = self.occupied_bins()
        return self._elites[keys[rng.integers(len(keys))]][0]

    def try_insert(self, candidate: EvaluatedSolution) -> InsertOutcome:
        fitness = self.fitness(candidate)
        if not np.isfinite(fitness):
            return InsertOutcome(OutcomeKind.REJECTED, 0.0,
                                 f"non-finite fitness from objectives {candidate.raw_objectives}")
        idx = bin_index(candidate.features, self.grid)
        entry = self._elites.get(idx)
        if entry is None:
            self._elites[idx] = (candidate, fitness)
            return InsertOutcome(OutcomeKind.NEW_BIN, fitness)

        incumbent, inc_fitness = entry
        delta = fitness - inc_fitness
        if candidate.feasible != incumbent.feasible:
            wins = candidate.feasible
        elif not candidate.feasible:
            wins = candidate.violation < incumbent.violation
        else:
            wins = fitness > inc_fitness
        if not wins:
            return InsertOutcome(OutcomeKind.REJECTED, delta)
        self._elites[idx] = (candidate, fitness)
        return InsertOutcome(OutcomeKind.REPLACED, delta)
