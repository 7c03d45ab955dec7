"""Benchmark problems: shifted-Rastrigin pair, ZDT3, DTLZ3, and a constrained
Rastrigin variant exercising the feasibility tournament."""

from __future__ import annotations

import numpy as np

from . import kernels
from .core import (
    MAXIMIZE,
    MINIMIZE,
    ConfigurationError,
    EvaluatedSolution,
    ProblemSpec,
    canonicalize,
)


class Problem:
    """A benchmark: a ProblemSpec plus a batch objective/feature evaluator."""

    id: str
    spec: ProblemSpec

    def raw_objectives(self, genomes: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def features(self, genomes: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def violations(self, genomes: np.ndarray) -> np.ndarray:
        return np.zeros(genomes.shape[0])

    def _check_batch(self, genomes: np.ndarray) -> np.ndarray:
        genomes = np.atleast_2d(np.asarray(genomes, dtype=float))
        if genomes.shape[1] != self.spec.genome_length:
            raise ConfigurationError(
                f"{self.id} expects {self.spec.genome_length} parameters, got {genomes.shape[1]}"
            )
        if np.any(genomes < self.spec.lower) or np.any(genomes > self.spec.upper):
            raise ConfigurationError(f"{self.id}: genome outside declared bounds")
        return genomes

    def evaluate_batch(self, genomes: np.ndarray) -> list[EvaluatedSolution]:
        genomes = self._check_batch(genomes)
        raw = self.raw_objectives(genomes)
        canonical = canonicalize(raw, self.spec.directions)
        feats = self.features(genomes)
        viol = self.violations(genomes)
        return [
            EvaluatedSolution(g, c, r, f, float(v))
            for g, c, r, f, v in zip(genomes, canonical, raw, feats, viol)
        ]

    def evaluate(self, genome) -> EvaluatedSolution:
        return self.evaluate_batch(np.atleast_2d(genome))[0]


class RastriginMOO(Problem):
    """Pair of 10-D Rastrigin objectives with shifted centers, both maximized;
    features are the first two parameters."""

    id = "rastrigin_moo"

    def __init__(self, n: int = 10, lam1: float = 0.0, lam2: float = 2.2):
        self.n = n
        self.lam1 = lam1
        self.lam2 = lam2
        self.spec = ProblemSpec(
            genome_length=n,
            bounds=((-2.0, 2.0),) * n,
            n_objectives=2,
            directions=(MAXIMIZE, MAXIMIZE),
            n_features=2,
            feature_ranges=((-2.0, 2.0), (-2.0, 2.0)),
            feature_extractor="first_two_params",
        )

    def raw_objectives(self, genomes):
        return kernels.rastrigin_pair(genomes, self.lam1, self.lam2)

    def features(self, genomes):
        return genomes[:, :2].copy()


class RastriginMOOConstrained(RastriginMOO):
    """Rastrigin pair with the half-space x1 + x2 <= 0 feasible; violation is
    the positive part of x1 + x2."""

    id = "rastrigin_moo_constrained"

    def violations(self, genomes):
        return np.maximum(0.0, genomes[:, 0] + genomes[:, 1])


class ZDT3(Problem):
    """30-variable ZDT3 with disconnected Pareto-optimal fronts, both objectives
    minimized; features are the first two parameters."""

    id = "zdt3"

    def __init__(self, n: int = 30):
        self.n = n
        self.spec = ProblemSpec(
            genome_length=n,
            bounds=((0.0, 1.0),) * n,
            n_objectives=2,
            directions=(MINIMIZE, MINIMIZE),
            n_features=2,
            feature_ranges=((0.0, 1.0), (0.0, 1.0)),
            feature_extractor="first_two_params",
        )

    def raw_objectives(self, genomes):
        f1 = genomes[:, 0]
        g = 1.0 + (9.0 / (self.n - 1)) * np.sum(genomes[:, 1:], axis=1)
        h = 1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1)
        return np.stack([f1, g * h], axis=1)

    def features(self, genomes):
        return genomes[:, :2].copy()


class DTLZ3(Problem):
    """DTLZ3 with n = M - 1 + k variables, all objectives minimized; features
    are parameters 6 and 7 (1-based), chosen to avoid the position variables."""

    id = "dtlz3"

    def __init__(self, n: int = 10, n_objectives: int = 5,
                 feature_indices: tuple[int, int] = (5, 6)):
        self.n = n
        self.m = n_objectives
        self.k = n - n_objectives + 1
        self.feature_indices = feature_indices
        self.spec = ProblemSpec(
            genome_length=n,
            bounds=((0.0, 1.0),) * n,
            n_objectives=n_objectives,
            directions=(MINIMIZE,) * n_objectives,
            n_features=2,
            feature_ranges=((0.0, 1.0), (0.0, 1.0)),
            feature_extractor=f"params_{feature_indices[0]}_{feature_indices[1]}",
        )

    def g(self, genomes: np.ndarray) -> np.ndarray:
        xm = genomes[:, self.m - 1:] - 0.5
        return 100.0 * (self.k + np.sum(xm * xm - np.cos(20.0 * np.pi * xm), axis=1))

    def raw_objectives(self, genomes):
        g = self.g(genomes)
        theta = genomes[:, : self.m - 1] * (np.pi / 2.0)
        cos = np.cos(theta)
        sin = np.sin(theta)
        out = np.empty((genomes.shape[0], self.m))
        for j in range(self.m):
            # f_j = (1+g) * prod of the first M-1-j cosines, times sin of the
            # next angle for all but the first objective
            f = 1.0 + g
            n_cos = self.m - 1 - j
            if n_cos > 0:
                f = f * np.prod(cos[:, :n_cos], axis=1)
            if j > 0:
                f = f * sin[:, n_cos]
            out[:, j] = f
        return out

    def features(self, genomes):
        return genomes[:, list(self.feature_indices)].copy()


_PROBLEMS = {
    cls.id: cls for cls in (RastriginMOO, RastriginMOOConstrained, ZDT3, DTLZ3)
}


def problem_ids() -> list[str]:
    return sorted(_PROBLEMS)


def make_problem(problem_id: str) -> Problem:
    try:
        return _PROBLEMS[problem_id]()
    except KeyError:
        raise ConfigurationError(
            f"unknown problem {problem_id!r}; valid ids: {', '.join(problem_ids())}"
        ) from None
