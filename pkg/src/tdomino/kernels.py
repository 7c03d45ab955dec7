"""Hot numeric kernels: tournament-dominance scoring, non-dominated front ranks,
and shifted-Rastrigin batch evaluation.

Each kernel has a numba @njit implementation and a pure-numpy fallback.
Set the environment variable TDOMINO_NUMBA=0 (before import) to force the
numpy path; `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("TDOMINO_NUMBA", "1") != "0"
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:
        USE_NUMBA = False


# ---------------------------------------------------------------- numpy path

def _tdomino_score_np(x: np.ndarray, anchors: np.ndarray) -> int:
    if anchors.shape[0] == 0:
        return 0
    return int(np.prod(np.sum(x[None, :] >= anchors, axis=0)))


def _tdomino_scores_batch_np(xs: np.ndarray, anchors: np.ndarray) -> np.ndarray:
    out = np.empty(xs.shape[0], dtype=np.int64)
    if anchors.shape[0] == 0:
        out[:] = 0
        return out
    # (n, m, d) comparison; n and m stay small (archive-sized)
    counts = np.sum(xs[:, None, :] >= anchors[None, :, :], axis=1)
    np.prod(counts, axis=1, out=out)
    return out


def _front_ranks_np(objs: np.ndarray) -> np.ndarray:
    n = objs.shape[0]
    geq = np.all(objs[:, None, :] >= objs[None, :, :], axis=2)
    gt = np.any(objs[:, None, :] > objs[None, :, :], axis=2)
    dominates = geq & gt  # dominates[i, j]: i dominates j
    n_dominators = dominates.sum(axis=0)
    ranks = np.full(n, -1, dtype=np.int64)
    rank = 0
    remaining = np.ones(n, dtype=bool)
    while remaining.any():
        front = remaining & (n_dominators == 0)
        ranks[front] = rank
        remaining &= ~front
        n_dominators = n_dominators - dominates[front].sum(axis=0)
        rank += 1
    return ranks


def _rastrigin_pair_np(xs: np.ndarray, lam1: float, lam2: float) -> np.ndarray:
    out = np.empty((xs.shape[0], 2))
    for j, lam in enumerate((lam1, lam2)):
        z = xs - lam
        out[:, j] = 200.0 - np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z), axis=1)
    return out


# ---------------------------------------------------------------- numba path

if USE_NUMBA:

    @njit(cache=True)
    def _tdomino_score_nb(x, anchors):
        m, d = anchors.shape
        if m == 0:
            return 0
        score = 1
        for n in range(d):
            count = 0
            for a in range(m):
                if x[n] >= anchors[a, n]:
                    count += 1
            score *= count
        return score

    @njit(cache=True)
    def _tdomino_scores_batch_nb(xs, anchors):
        out = np.empty(xs.shape[0], dtype=np.int64)
        for i in range(xs.shape[0]):
            out[i] = _tdomino_score_nb(xs[i], anchors)
        return out

    @njit(cache=True)
    def _front_ranks_nb(objs):
        n, d = objs.shape
        dominates = np.zeros((n, n), dtype=np.bool_)
        n_dominators = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                geq = True
                gt = False
                for k in range(d):
                    if objs[i, k] < objs[j, k]:
                        geq = False
                        break
                    if objs[i, k] > objs[j, k]:
                        gt = True
                if geq and gt:
                    dominates[i, j] = True
                    n_dominators[j] += 1
        ranks = np.full(n, -1, dtype=np.int64)
        rank = 0
        n_assigned = 0
        while n_assigned < n:
            front = np.zeros(n, dtype=np.bool_)
            for i in range(n):
                if ranks[i] == -1 and n_dominators[i] == 0:
                    front[i] = True
            for i in range(n):
                if front[i]:
                    ranks[i] = rank
                    n_assigned += 1
                    for j in range(n):
                        if dominates[i, j]:
                            n_dominators[j] -= 1
            rank += 1
        return ranks

    @njit(cache=True)
    def _rastrigin_pair_nb(xs, lam1, lam2):
        n, d = xs.shape
        out = np.empty((n, 2))
        for i in range(n):
            s1 = 0.0
            s2 = 0.0
            for k in range(d):
                z1 = xs[i, k] - lam1
                z2 = xs[i, k] - lam2
                s1 += z1 * z1 - 10.0 * math.cos(2.0 * math.pi * z1)
                s2 += z2 * z2 - 10.0 * math.cos(2.0 * math.pi * z2)
            out[i, 0] = 200.0 - s1
            out[i, 1] = 200.0 - s2
        return out

    tdomino_score = _tdomino_score_nb
    tdomino_scores_batch = _tdomino_scores_batch_nb
    front_ranks = _front_ranks_nb
    rastrigin_pair = _rastrigin_pair_nb
else:
    tdomino_score = _tdomino_score_np
    tdomino_scores_batch = _tdomino_scores_batch_np
    front_ranks = _front_ranks_np
    rastrigin_pair = _rastrigin_pair_np


def warmup():
    """Trigger JIT compilation so later timings exclude compile cost."""
    x = np.zeros(2)
    a = np.zeros((2, 2))
    tdomino_score(x, a)
    tdomino_scores_batch(a, a)
    front_ranks(a)
    rastrigin_pair(a, 0.0, 1.0)
