"""Experiment orchestration: replicate loop, per-generation metrics, exports."""

from __future__ import annotations

import json
import os

import numpy as np

from .analysis import (
    all_pair_views,
    balance_fraction,
    coverage,
    export_run,
    qd_score,
)
from .archive import TDominoArchive
from .baselines import ScalarArchive, default_weights
from .config import RunConfig
from .core import GridSpec, bin_index
from .emitters import CmaMeEmitter, Feedback
from .nsga2 import Nsga2
from .problems import Problem, make_problem


def make_grid(problem: Problem, dims: tuple[int, ...]) -> GridSpec:
    if len(dims) != problem.spec.n_features:
        from .core import ConfigurationError
        raise ConfigurationError(
            f"grid_dims has {len(dims)} axes but {problem.id} has "
            f"{problem.spec.n_features} features")
    return GridSpec(dims=dims, ranges=problem.spec.feature_ranges)


def make_archive(config: RunConfig, problem: Problem, grid: GridSpec):
    n_objs = problem.spec.n_objectives
    if config.algo == "tdomino":
        return TDominoArchive(grid, n_objs,
                              neighbor_radius=config.neighbor_radius,
                              history_capacity=config.history_capacity)
    if config.algo == "me_single":
        return ScalarArchive.single(grid, n_objs, index=config.me_single_index)
    if config.algo == "me_sum":
        weights = (np.asarray(config.me_sum_weights, dtype=float)
                   if config.me_sum_weights is not None else default_weights(n_objs))
        return ScalarArchive.summed(grid, n_objs, weights=weights)
    raise ValueError(config.algo)


def run_map_elites(config: RunConfig, problem: Problem, seed: int):
    """One MAP-Elites replicate; returns (archive, metrics records)."""
    rng = np.random.default_rng(seed)
    grid = make_grid(problem, config.grid_dims)
    archive = make_archive(config, problem, grid)
    spec = problem.spec
    emitters = [
        CmaMeEmitter(spec.lower, spec.upper, config.batch_size, rng)
        for _ in range(config.emitters)
    ]
    metrics = []
    evals = 0
    for gen in range(1, config.generations + 1):
        churn = 0
        for emitter in emitters:
            genomes = emitter.ask(archive)
            solutions = problem.evaluate_batch(genomes)
            outcomes = [archive.try_insert(s) for s in solutions]
            churn += sum(o.kind.value == "replaced" for o in outcomes)
            emitter.tell(Feedback(genomes, outcomes), archive)
            evals += len(solutions)
        per_obj, total = qd_score(archive)
        metrics.append({
            "gen": gen,
            "evals": evals,
            "coverage": coverage(archive),
            "qd_per_obj": [float(v) for v in per_obj],
            "qd_total": total,
            "churn": churn,
            "restarts": sum(e.restarts for e in emitters),
        })
    return archive, metrics


def run_nsga2(config: RunConfig, problem: Problem, seed: int):
    """One NSGA-II replicate at the same evaluation budget; the initial
    population evaluation counts as the first generation."""
    rng = np.random.default_rng(seed)
    grid = make_grid(problem, config.grid_dims)
    opt = Nsga2(problem, config.population_size, rng)
    metrics = []
    evals = config.population_size
    for gen in range(1, config.generations + 1):
        if gen > 1:
            evals += opt.step()
        bins = {bin_index(m.features, grid) for m in opt.population}
        per_obj = np.sum([m.objectives for m in opt.population], axis=0)
        metrics.append({
            "gen": gen,
            "evals": evals,
            "coverage": len(bins) / grid.n_bins,
            "qd_per_obj": [float(v) for v in per_obj],
            "qd_total": float(per_obj.sum()),
            "churn": 0,
            "restarts": 0,
        })
    return opt, grid, metrics


def _percentiles(values: list[float]) -> dict:
    if not values:
        return {"q25": None, "median": None, "q75": None}
    q25, med, q75 = np.percentile(values, [25, 50, 75])
    return {"q25": float(q25), "median": float(med), "q75": float(q75)}


def run_replicate(config: RunConfig, replicate: int, out_dir: str) -> dict:
    """Run one replicate and export its artifacts; returns summary stats."""
    problem = make_problem(config.problem)
    seed = config.replicate_seed(replicate)
    if config.algo == "nsga2":
        opt, grid, metrics = run_nsga2(config, problem, seed)
        solutions = opt.population
        entries = [(bin_index(m.features, grid), m) for m in solutions]
        flat_views = None
    else:
        archive, metrics = run_map_elites(config, problem, seed)
        entries = [(b, archive.elite_at(b)) for b in archive.occupied_bins()]
        solutions = [s for _, s in entries]
        flat_views = all_pair_views(archive) or None
    export_run(entries, metrics, out_dir, flat_views)
    final = metrics[-1]
    return {
        "replicate": replicate,
        "seed": seed,
        "status": "ok",
        "coverage": final["coverage"],
        "qd_per_obj": final["qd_per_obj"],
        "qd_total": final["qd_total"],
        "balance_self": balance_fraction(solutions, solutions) if solutions else 0.0,
        "evaluations": final["evals"],
    }


def run_experiment(config: RunConfig) -> int:
    """Run all replicates of one (problem, algorithm) cell and write a summary.
    Returns 0 if every replicate succeeded, 1 otherwise."""
    base = os.path.join(config.out, config.problem, config.algo)
    replicates = []
    failed = 0
    for rep in range(config.replicates):
        rep_dir = os.path.join(base, f"rep{rep}")
        try:
            replicates.append(run_replicate(config, rep, rep_dir))
        except Exception as exc:  # degrade gracefully; sweep continues
            failed += 1
            replicates.append({
                "replicate": rep,
                "seed": config.replicate_seed(rep),
                "status": "failed",
                "error": f"{type(exc).__name__}: {exc}",
            })
    ok = [r for r in replicates if r["status"] == "ok"]
    summary = {
        "problem": config.problem,
        "algo": config.algo,
        "replicates": replicates,
        "n_failed": failed,
        "coverage": _percentiles([r["coverage"] for r in ok]),
        "qd_total": _percentiles([r["qd_total"] for r in ok]),
        "balance_self": _percentiles([r["balance_self"] for r in ok]),
    }
    os.makedirs(base, exist_ok=True)
    with open(os.path.join(base, "summary.json"), "w") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return 0 if failed == 0 else 1
