import numpy as np
import pytest

from tdomino import kernels
from tdomino.core import EvaluatedSolution


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    kernels.warmup()


def make_solution(objectives, features, genome=None, violation=0.0, raw=None):
    """Solution with canonical objectives given directly (raw defaults to same)."""
    objectives = np.asarray(objectives, dtype=float)
    if genome is None:
        genome = np.asarray(features, dtype=float)
    return EvaluatedSolution(
        genome=np.asarray(genome, dtype=float),
        objectives=objectives,
        raw_objectives=objectives if raw is None else np.asarray(raw, dtype=float),
        features=np.asarray(features, dtype=float),
        violation=violation,
    )


def naive_tdomino(x, anchors) -> int:
    """Independent double-loop tournament-dominance reference."""
    x = np.asarray(x, dtype=float)
    anchors = np.asarray(anchors, dtype=float)
    if len(anchors) == 0:
        return 0
    score = 1
    for n in range(len(x)):
        count = 0
        for a in anchors:
            if x[n] >= a[n]:
                count += 1
        score *= count
    return score


def naive_fronts(objectives) -> list[list[int]]:
    """O(N^3) front peeling by pairwise dominance checks."""
    objectives = [np.asarray(o, dtype=float) for o in objectives]

    def dom(a, b):
        return bool(np.all(a >= b) and np.any(a > b))

    remaining = list(range(len(objectives)))
    fronts = []
    while remaining:
        front = [
            i for i in remaining
            if not any(dom(objectives[j], objectives[i]) for j in remaining if j != i)
        ]
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts
