"""Reporting: QD score, coverage, quartile balance, Pareto extraction, archive
flattening, and plot-ready CSV/JSONL exports."""

from __future__ import annotations

import csv
import itertools
import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import ConfigurationError, EvaluatedSolution, GridSpec, bin_index


def qd_score(archive) -> tuple[np.ndarray, float]:
    """Per-objective sums of canonical elite objectives over occupied bins, and
    their total.  Empty archive scores zero."""
    elites = list(archive.elites())
    if not elites:
        return np.zeros(archive.n_objectives), 0.0
    per_obj = np.sum([e.objectives for e in elites], axis=0)
    return per_obj, float(per_obj.sum())


def coverage(archive) -> float:
    return len(archive) / archive.n_bins


def pareto_front(solutions: list[EvaluatedSolution]) -> list[EvaluatedSolution]:
    """Solutions not strictly dominated by any other; exact duplicates retained."""
    objs = np.stack([s.objectives for s in solutions]) if solutions else np.empty((0, 0))
    keep = []
    for i, s in enumerate(solutions):
        geq = np.all(objs >= objs[i], axis=1)
        gt = np.any(objs > objs[i], axis=1)
        if not np.any(geq & gt):
            keep.append(s)
    return keep


def balance_fraction(solutions: list[EvaluatedSolution],
                     reference: list[EvaluatedSolution]) -> float:
    """Fraction of solutions strictly above the bottom quartile of the
    reference set's range on every objective (canonical form)."""
    if not reference:
        raise ConfigurationError("reference set must be non-empty")
    ref = np.stack([s.objectives for s in reference])
    if not solutions:
        return 0.0
    objs = np.stack([s.objectives for s in solutions])
    if objs.shape[1] != ref.shape[1]:
        raise ConfigurationError(
            f"objective count mismatch: {objs.shape[1]} vs {ref.shape[1]}")
    lo = ref.min(axis=0)
    hi = ref.max(axis=0)
    # zero-range objectives leave threshold = the single value; strict > fails
    thresholds = lo + 0.25 * (hi - lo)
    passed = np.all(objs > thresholds, axis=1)
    return float(np.mean(passed))


@dataclass
class FlatCell:
    solution: EvaluatedSolution
    static_score: int
    source_bin: tuple[int, ...]


@dataclass
class FlattenedView:
    axes: tuple[int, int]
    grid: GridSpec
    cells: dict[tuple[int, ...], FlatCell] = field(default_factory=dict)


def flatten(archive, axes: tuple[int, int],
            target_grid: GridSpec | None = None) -> FlattenedView:
    """Project an archive onto the feature-axis pair `axes`: every elite gets a
    static whole-archive score, is re-binned on the two axes, and the highest
    score per 2D cell wins (ties to the earlier source bin in lex order)."""
    i, j = axes
    if i == j:
        raise ConfigurationError("flatten axes must differ")
    for a in (i, j):
        if not 0 <= a < archive.grid.n_features:
            raise ConfigurationError(f"axis {a} out of range for grid")
    if target_grid is None:
        target_grid = GridSpec(
            dims=(archive.grid.dims[i], archive.grid.dims[j]),
            ranges=(archive.grid.ranges[i], archive.grid.ranges[j]),
        )
    scores = archive.static_scores()
    view = FlattenedView(axes=(i, j), grid=target_grid)
    for src_bin in archive.occupied_bins():
        elite = archive.elite_at(src_bin)
        score = scores[src_bin]
        cell = bin_index(elite.features[[i, j]], target_grid)
        held = view.cells.get(cell)
        if held is None or score > held.static_score:
            view.cells[cell] = FlatCell(elite, score, src_bin)
    return view


# --------------------------------------------------------------------- export

def _solution_row(bin_idx, sol: EvaluatedSolution, static_score: int) -> list:
    return (
        [int(b) for b in bin_idx]
        + [repr(float(v)) for v in sol.genome]
        + [repr(float(v)) for v in sol.raw_objectives]
        + [repr(float(v)) for v in sol.objectives]
        + [repr(float(v)) for v in sol.features]
        + [repr(float(sol.violation)), int(static_score)]
    )


def _header(n_bins_axes, n_params, n_objs, n_feats) -> list[str]:
    return (
        [f"bin_{i}" for i in range(n_bins_axes)]
        + [f"g{i}" for i in range(n_params)]
        + [f"raw_obj_{i}" for i in range(n_objs)]
        + [f"obj_{i}" for i in range(n_objs)]
        + [f"feat_{i}" for i in range(n_feats)]
        + ["violation", "tdomino_static"]
    )


def static_scores_of(solutions: list[EvaluatedSolution]) -> np.ndarray:
    """Whole-set tournament dominance score for each solution."""
    if not solutions:
        return np.zeros(0, dtype=np.int64)
    objs = np.stack([s.objectives for s in solutions])
    return kernels.tdomino_scores_batch(objs, objs)


def _write_csv(path: str, header: list[str], rows) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def export_run(entries: list[tuple[tuple[int, ...], EvaluatedSolution]],
               metrics: list[dict], out_dir: str,
               flat_views: list[FlattenedView] | None = None) -> list[str]:
    """Write the run artifacts: archive CSV, per-generation metrics JSONL, a
    parallel-coordinates CSV of raw objectives, and flattened-view CSVs.

    `entries` are (bin multi-index, solution) pairs; for population-based runs
    the bin index is derived from the run's grid.  Output is deterministic:
    re-exporting identical state reproduces files byte for byte.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []
    solutions = [s for _, s in entries]
    statics = static_scores_of(solutions)

    if entries:
        first = entries[0]
        header = _header(len(first[0]), first[1].genome.shape[0],
                         first[1].objectives.shape[0], first[1].features.shape[0])
    else:
        header = _header(0, 0, 0, 0)
    archive_path = os.path.join(out_dir, "archive.csv")
    _write_csv(archive_path, header,
               (_solution_row(b, s, sc) for (b, s), sc in zip(entries, statics)))
    written.append(archive_path)

    metrics_path = os.path.join(out_dir, "metrics.jsonl")
    try:
        with open(metrics_path, "w") as fh:
            for record in metrics:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing {metrics_path}: {exc}") from exc
    written.append(metrics_path)

    pc_path = os.path.join(out_dir, "parallel_coords.csv")
    n_objs = solutions[0].raw_objectives.shape[0] if solutions else 0
    _write_csv(pc_path, [f"raw_obj_{i}" for i in range(n_objs)],
               ([repr(float(v)) for v in s.raw_objectives] for s in solutions))
    written.append(pc_path)

    for view in flat_views or []:
        i, j = view.axes
        path = os.path.join(out_dir, f"flat_{i}_{j}.csv")
        rows = []
        for cell in sorted(view.cells):
            fc = view.cells[cell]
            rows.append(_solution_row(cell, fc.solution, fc.static_score)
                        + [int(b) for b in fc.source_bin])
        if view.cells:
            any_cell = view.cells[next(iter(sorted(view.cells)))]
            hdr = _header(2, any_cell.solution.genome.shape[0],
                          any_cell.solution.objectives.shape[0],
                          any_cell.solution.features.shape[0])
            hdr += [f"source_bin_{k}" for k in range(len(any_cell.source_bin))]
        else:
            hdr = _header(2, 0, 0, 0)
        _write_csv(path, hdr, rows)
        written.append(path)
    return written


def all_pair_views(archive) -> list[FlattenedView]:
    """Flattened views for every feature-axis pair of a >=3 feature archive."""
    d = archive.grid.n_features
    if d < 3:
        return []
    return [flatten(archive, (i, j)) for i, j in itertools.combinations(range(d), 2)]
