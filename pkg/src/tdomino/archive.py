"""MAP-Elites archive ranked by the Tournament Dominance Objective (T-DominO).

The score of a solution with canonical objective values x against a set of
anchor points A is

    score(x, A) = prod over objectives n of |{a in A : x_n >= a_n}|

Anchors for an insertion tournament are the challenger itself, the bin's
incumbent elite, the bin's FIFO history of replaced elites, and the current
elites of all bins within a Chebyshev neighborhood.  Replacement requires a
strictly greater score; feasibility always trumps score.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import EvaluatedSolution, GridSpec, bin_index, neighbors_within


class OutcomeKind(enum.Enum):
    NEW_BIN = "new_bin"
    REPLACED = "replaced"
    REJECTED = "rejected"


@dataclass(frozen=True)
class InsertOutcome:
    kind: OutcomeKind
    score_delta: float
    reason: str = ""

    @property
    def improved(self) -> bool:
        return self.kind is not OutcomeKind.REJECTED


def tdomino_score(x, anchors) -> int:
    """Tournament dominance score of x against anchor rows; 0 for no anchors."""
    x = np.asarray(x, dtype=float)
    anchors = np.asarray(anchors, dtype=float)
    if anchors.ndim != 2 or anchors.shape[1] != x.shape[0]:
        if anchors.size == 0:
            return 0
        raise ValueError(f"anchor shape {anchors.shape} does not match x of length {x.shape[0]}")
    return int(kernels.tdomino_score(x, anchors))


class TDominoArchive:
    """Grid archive with one elite per bin, replacement by T-DominO tournament."""

    def __init__(self, grid: GridSpec, n_objectives: int,
                 neighbor_radius: int = 4, history_capacity: int = 10):
        self.grid = grid
        self.n_objectives = n_objectives
        self.neighbor_radius = neighbor_radius
        self.history_capacity = history_capacity
        self._elites: dict[tuple[int, ...], EvaluatedSolution] = {}
        self._history: dict[tuple[int, ...], deque] = {}
        self._neighbor_cache: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def __len__(self) -> int:
        return len(self._elites)

    @property
    def n_bins(self) -> int:
        return self.grid.n_bins

    def elite_at(self, idx: tuple[int, ...]) -> EvaluatedSolution | None:
        return self._elites.get(idx)

    def history_at(self, idx: tuple[int, ...]) -> list[np.ndarray]:
        return list(self._history.get(idx, ()))

    def items(self):
        return self._elites.items()

    def elites(self):
        return self._elites.values()

    def occupied_bins(self) -> list[tuple[int, ...]]:
        return sorted(self._elites)

    def random_elite(self, rng: np.random.Generator) -> EvaluatedSolution:
        keys = self.occupied_bins()
        return self._elites[keys[rng.integers(len(keys))]]

    def _neighbors(self, idx: tuple[int, ...]) -> list[tuple[int, ...]]:
        cached = self._neighbor_cache.get(idx)
        if cached is None:
            cached = neighbors_within(idx, self.neighbor_radius, self.grid)
            self._neighbor_cache[idx] = cached
        return cached

    def collect_anchors(self, idx: tuple[int, ...], challenger: EvaluatedSolution) -> np.ndarray:
        """Anchor rows for the tournament at bin `idx`, in deterministic order:
        challenger, incumbent, bin history (oldest first), neighbor elites
        (lexicographic by bin).  Duplicates are kept (multiset semantics)."""
        rows = [challenger.objectives]
        incumbent = self._elites.get(idx)
        if incumbent is not None:
            rows.append(incumbent.objectives)
        rows.extend(self._history.get(idx, ()))
        for nb in self._neighbors(idx):
            elite = self._elites.get(nb)
            if elite is not None:
                rows.append(elite.objectives)
        return np.stack(rows)

    def _push_history(self, idx: tuple[int, ...], objectives: np.ndarray):
        if self.history_capacity <= 0:
            return
        buf = self._history.get(idx)
        if buf is None:
            buf = deque(maxlen=self.history_capacity)
            self._history[idx] = buf
        buf.append(np.array(objectives))

    def try_insert(self, candidate: EvaluatedSolution) -> InsertOutcome:
        if not np.all(np.isfinite(candidate.objectives)):
            return InsertOutcome(OutcomeKind.REJECTED, 0.0,
                                 f"non-finite objectives {candidate.raw_objectives}")
        idx = bin_index(candidate.features, self.grid)
        incumbent = self._elites.get(idx)
        if incumbent is None:
            anchors = self.collect_anchors(idx, candidate)
            score = tdomino_score(candidate.objectives, anchors)
            self._elites[idx] = candidate
            self._push_history(idx, candidate.objectives)
            return InsertOutcome(OutcomeKind.NEW_BIN, float(score))

        anchors = self.collect_anchors(idx, candidate)
        cand_score = tdomino_score(candidate.objectives, anchors)
        inc_score = tdomino_score(incumbent.objectives, anchors)
        delta = float(cand_score - inc_score)

        # Feasibility tournament decides before any score comparison.
        if candidate.feasible != incumbent.feasible:
            wins = candidate.feasible
        elif not candidate.feasible:
            wins = candidate.violation < incumbent.violation
        else:
            wins = cand_score > inc_score

        if not wins:
            return InsertOutcome(OutcomeKind.REJECTED, delta)
        self._elites[idx] = candidate
        self._push_history(idx, incumbent.objectives)
        self._push_history(idx, candidate.objectives)
        return InsertOutcome(OutcomeKind.REPLACED, delta)

    def static_scores(self) -> dict[tuple[int, ...], int]:
        """Score every elite against the anchor set of all current elites.
        Reporting only; never used for insertion."""
        if not self._elites:
            return {}
        keys = self.occupied_bins()
        objs = np.stack([self._elites[k].objectives for k in keys])
        scores = kernels.tdomino_scores_batch(objs, objs)
        return {k: int(s) for k, s in zip(keys, scores)}
