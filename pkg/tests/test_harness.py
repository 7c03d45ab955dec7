import filecmp
import json
import os

import numpy as np
import pytest

from tdomino.config import RunConfig
from tdomino.harness import run_experiment, run_map_elites, run_nsga2, run_replicate
from tdomino.problems import make_problem


def small_config(**kwargs):
    defaults = dict(problem="rastrigin_moo", algo="tdomino", generations=2,
                    replicates=1, batch_size=50, seed=11)
    defaults.update(kwargs)
    return RunConfig(**defaults)


def assert_trees_identical(a, b):
    for root, _, files in os.walk(a):
        rel = os.path.relpath(root, a)
        for name in files:
            fa = os.path.join(root, name)
            fb = os.path.join(b, rel, name)
            assert filecmp.cmp(fa, fb, shallow=False), f"{rel}/{name} differs"


class TestMapElitesLoop:
    def test_evaluation_budget(self):
        cfg = small_config(generations=10, batch_size=200)
        _, metrics = run_map_elites(cfg, make_problem("rastrigin_moo"), seed=1)
        assert metrics[-1]["evals"] == 400 * 10

    def test_metrics_invariants(self):
        cfg = small_config(generations=5)
        _, metrics = run_map_elites(cfg, make_problem("rastrigin_moo"), seed=2)
        evals = [m["evals"] for m in metrics]
        assert evals == sorted(evals) and len(set(evals)) == len(evals)
        cov = [m["coverage"] for m in metrics]
        assert all(0 <= c <= 1 for c in cov)
        assert cov == sorted(cov)

    def test_nsga2_budget_parity(self):
        cfg = small_config(algo="nsga2", generations=4)
        _, _, metrics = run_nsga2(cfg, make_problem("rastrigin_moo"), seed=3)
        assert metrics[-1]["evals"] == cfg.population_size * 4


class TestExperiment:
    def test_summary_aggregates(self, tmp_path):
        cfg = small_config(replicates=2, out=str(tmp_path))
        assert run_experiment(cfg) == 0
        summary = json.loads(
            (tmp_path / "rastrigin_moo" / "tdomino" / "summary.json").read_text())
        assert len(summary["replicates"]) == 2
        assert summary["coverage"]["median"] is not None
        assert 0 <= summary["balance_self"]["median"] <= 1

    def test_nsga2_balance_self_in_range(self, tmp_path):
        cfg = small_config(algo="nsga2", out=str(tmp_path))
        run_experiment(cfg)
        summary = json.loads(
            (tmp_path / "rastrigin_moo" / "nsga2" / "summary.json").read_text())
        assert 0.0 <= summary["replicates"][0]["balance_self"] <= 1.0

    def test_same_seed_byte_identical_trees(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_experiment(small_config(out=str(a)))
        run_experiment(small_config(out=str(b)))
        assert_trees_identical(a, b)

    def test_failed_replicate_marked_and_sweep_continues(self, tmp_path, monkeypatch):
        import tdomino.harness as harness
        real = harness.run_replicate

        def sometimes_broken(config, replicate, out_dir):
            if replicate == 0:
                raise RuntimeError("synthetic failure")
            return real(config, replicate, out_dir)

        monkeypatch.setattr(harness, "run_replicate", sometimes_broken)
        cfg = small_config(replicates=2, out=str(tmp_path))
        assert harness.run_experiment(cfg) == 1
        summary = json.loads(
            (tmp_path / "rastrigin_moo" / "tdomino" / "summary.json").read_text())
        statuses = [r["status"] for r in summary["replicates"]]
        assert statuses == ["failed", "ok"]
        assert "synthetic failure" in summary["replicates"][0]["error"]
