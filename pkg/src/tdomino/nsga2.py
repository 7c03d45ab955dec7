"""NSGA-II reference optimizer: non-dominated sorting, crowding distance,
binary tournament selection, SBX crossover, and polynomial mutation."""

from __future__ import annotations

import numpy as np

from . import kernels
from .core import EvaluatedSolution
from .problems import Problem

# pymoo-style operator defaults
SBX_ETA = 15.0
SBX_PROB = 0.9
PM_ETA = 20.0


def dominates(a, b) -> bool:
    """Pareto dominance in canonical maximization form."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective shapes differ: {a.shape} vs {b.shape}")
    return bool(np.all(a >= b) and np.any(a > b))


def fast_nondominated_sort(objectives: np.ndarray) -> list[list[int]]:
    """Partition row indices into fronts; within-front order is index order."""
    objectives = np.asarray(objectives, dtype=float)
    ranks = kernels.front_ranks(objectives)
    fronts: list[list[int]] = [[] for _ in range(int(ranks.max()) + 1)]
    for i, r in enumerate(ranks):
        fronts[int(r)].append(i)
    return fronts


def crowding_distance(front_objs: np.ndarray) -> np.ndarray:
    """Per-member crowding distance; boundary members per objective get +inf,
    zero-range objectives contribute nothing to interior members."""
    front_objs = np.asarray(front_objs, dtype=float)
    n, m = front_objs.shape
    dist = np.zeros(n)
    for j in range(m):
        order = np.argsort(front_objs[:, j], kind="stable")
        vals = front_objs[order, j]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0 and n > 2:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return dist


def _rank_and_crowding(members: list[EvaluatedSolution]):
    objs = np.stack([m.objectives for m in members])
    fronts = fast_nondominated_sort(objs)
    rank = np.empty(len(members), dtype=int)
    crowd = np.empty(len(members))
    for r, front in enumerate(fronts):
        rank[front] = r
        crowd[front] = crowding_distance(objs[front])
    return fronts, rank, crowd


class Nsga2:
    """(mu + lambda) NSGA-II over a Problem, one seeded RNG stream."""

    def __init__(self, problem: Problem, population_size: int,
                 rng: np.random.Generator):
        self.problem = problem
        self.n = population_size
        self.rng = rng
        self.d = problem.spec.genome_length
        self.lower = problem.spec.lower
        self.upper = problem.spec.upper
        self.pm_prob = 1.0 / self.d
        genomes = rng.uniform(self.lower, self.upper, size=(self.n, self.d))
        self.population = problem.evaluate_batch(genomes)

    def _tournament(self, rank, crowd) -> int:
        i, j = self.rng.integers(self.n, size=2)
        a, b = self.population[i], self.population[j]
        # Feasibility decides first, then rank, then crowding.
        if a.feasible != b.feasible:
            return i if a.feasible else j
        if not a.feasible and a.violation != b.violation:
            return i if a.violation < b.violation else j
        if rank[i] != rank[j]:
            return i if rank[i] < rank[j] else j
        if crowd[i] != crowd[j]:
            return i if crowd[i] > crowd[j] else j
        return i

    def _sbx(self, p1: np.ndarray, p2: np.ndarray):
        """Bounded simulated binary crossover, applied per variable."""
        c1, c2 = p1.copy(), p2.copy()
        if self.rng.random() >= SBX_PROB:
            return c1, c2
        exp = 1.0 / (SBX_ETA + 1.0)
        for i in range(self.d):
            if self.rng.random() > 0.5 or abs(p1[i] - p2[i]) < 1e-14:
                continue
            y1, y2 = sorted((p1[i], p2[i]))
            yl, yu = self.lower[i], self.upper[i]
            u = self.rng.random()
            spread = y2 - y1

            beta = 1.0 + 2.0 * (y1 - yl) / spread
            alpha = 2.0 - beta ** -(SBX_ETA + 1.0)
            betaq = ((u * alpha) ** exp if u <= 1.0 / alpha
                     else (1.0 / (2.0 - u * alpha)) ** exp)
            lo_child = 0.5 * (y1 + y2 - betaq * spread)

            beta = 1.0 + 2.0 * (yu - y2) / spread
            alpha = 2.0 - beta ** -(SBX_ETA + 1.0)
            betaq = ((u * alpha) ** exp if u <= 1.0 / alpha
                     else (1.0 / (2.0 - u * alpha)) ** exp)
            hi_child = 0.5 * (y1 + y2 + betaq * spread)

            lo_child = min(max(lo_child, yl), yu)
            hi_child = min(max(hi_child, yl), yu)
            if self.rng.random() < 0.5:
                c1[i], c2[i] = hi_child, lo_child
            else:
                c1[i], c2[i] = lo_child, hi_child
        return c1, c2

    def _polynomial_mutation(self, x: np.ndarray) -> np.ndarray:
        """Bounded polynomial mutation, applied per variable."""
        x = x.copy()
        exp = 1.0 / (PM_ETA + 1.0)
        for i in range(self.d):
            if self.rng.random() >= self.pm_prob:
                continue
            y = x[i]
            yl, yu = self.lower[i], self.upper[i]
            span = yu - yl
            u = self.rng.random()
            if u < 0.5:
                xy = 1.0 - (y - yl) / span
                val = 2.0 * u + (1.0 - 2.0 * u) * xy ** (PM_ETA + 1.0)
                deltaq = val ** exp - 1.0
            else:
                xy = 1.0 - (yu - y) / span
                val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy ** (PM_ETA + 1.0)
                deltaq = 1.0 - val ** exp
            x[i] = min(max(y + deltaq * span, yl), yu)
        return x

    def make_offspring(self, count: int) -> np.ndarray:
        _, rank, crowd = _rank_and_crowding(self.population)
        offspring = np.empty((count, self.d))
        k = 0
        while k < count:
            p1 = self.population[self._tournament(rank, crowd)].genome
            p2 = self.population[self._tournament(rank, crowd)].genome
            for child in self._sbx(p1, p2):
                if k >= count:
                    break
                offspring[k] = self._polynomial_mutation(child)
                k += 1
        return np.clip(offspring, self.lower, self.upper)

    def survive(self, combined: list[EvaluatedSolution]) -> list[EvaluatedSolution]:
        objs = np.stack([m.objectives for m in combined])
        fronts = fast_nondominated_sort(objs)
        survivors: list[int] = []
        for front in fronts:
            if len(survivors) + len(front) <= self.n:
                survivors.extend(front)
            else:
                crowd = crowding_distance(objs[front])
                need = self.n - len(survivors)
                # stable: keep original index order among equal crowding
                keep = sorted(range(len(front)), key=lambda i: (-crowd[i], i))[:need]
                survivors.extend(front[i] for i in sorted(keep))
                break
        return [combined[i] for i in survivors]

    def step(self) -> int:
        """One generation; returns number of evaluations performed."""
        offspring_genomes = self.make_offspring(self.n)
        offspring = self.problem.evaluate_batch(offspring_genomes)
        self.population = self.survive(self.population + offspring)
        return self.n

    def first_front(self) -> list[EvaluatedSolution]:
        objs = np.stack([m.objectives for m in self.population])
        return [self.population[i] for i in fast_nondominated_sort(objs)[0]]
