import json
import os

import numpy as np
import pytest

from tdomino.cli import main
from tdomino.config import RunConfig, parse_config
from tdomino.core import ConfigurationError


class TestParseConfig:
    def test_minimal_fills_defaults(self, tmp_path):
        cfg_file = tmp_path / "run.toml"
        cfg_file.write_text('problem = "rastrigin_moo"\nalgo = "tdomino"\n')
        cfg = parse_config(str(cfg_file))
        assert cfg.grid_dims == (20, 20)
        assert cfg.neighbor_radius == 4
        assert cfg.history_capacity == 10
        assert cfg.emitters == 2
        assert cfg.batch_size == 200
        assert cfg.generations == 100
        assert cfg.replicates == 30

    def test_typo_algorithm_lists_valid(self):
        with pytest.raises(ConfigurationError) as err:
            parse_config(overrides={"algo": "nsgaii"})
        for valid in ("tdomino", "me_single", "me_sum", "nsga2"):
            assert valid in str(err.value)

    def test_flag_overrides_file(self, tmp_path):
        cfg_file = tmp_path / "run.toml"
        cfg_file.write_text("generations = 100\n")
        cfg = parse_config(str(cfg_file), {"generations": 5})
        assert cfg.generations == 5

    def test_unknown_key_rejected(self, tmp_path):
        cfg_file = tmp_path / "run.toml"
        cfg_file.write_text("budget = 3\n")
        with pytest.raises(ConfigurationError, match="budget"):
            parse_config(str(cfg_file))

    def test_invalid_numeric_names_key(self):
        with pytest.raises(ConfigurationError, match="generations"):
            parse_config(overrides={"generations": 0})

    def test_missing_file(self):
        with pytest.raises(ConfigurationError):
            parse_config("/nonexistent/run.toml")

    def test_replicate_seeds(self):
        cfg = RunConfig(seed=17)
        assert [cfg.replicate_seed(k) for k in range(3)] == [17, 18, 19]

    def test_budget_parity(self):
        cfg = RunConfig()
        assert cfg.population_size == cfg.emitters * cfg.batch_size == 400


class TestCli:
    def run_small(self, tmp_path, **extra):
        args = ["run", "--problem", "rastrigin_moo", "--algo", "tdomino",
                "--gens", "2", "--reps", "1", "--seed", "3",
                "--out", str(tmp_path / "out")]
        for k, v in extra.items():
            args += [f"--{k}", str(v)]
        return main(args)

    def test_run_exit_zero_and_outputs(self, tmp_path):
        assert self.run_small(tmp_path) == 0
        rep = tmp_path / "out" / "rastrigin_moo" / "tdomino" / "rep0"
        assert (rep / "archive.csv").exists()
        assert (rep / "metrics.jsonl").exists()
        assert (rep / "parallel_coords.csv").exists()
        summary = json.loads(
            (tmp_path / "out" / "rastrigin_moo" / "tdomino" / "summary.json").read_text())
        assert summary["n_failed"] == 0

    def test_config_error_exit_two(self, capsys):
        assert main(["run", "--algo", "bogus"]) == 2
        assert "tdomino" in capsys.readouterr().err

    def test_score_roundtrip(self, tmp_path, capsys):
        self.run_small(tmp_path)
        archive_csv = str(tmp_path / "out" / "rastrigin_moo" / "tdomino"
                          / "rep0" / "archive.csv")
        assert main(["score", "--archive", archive_csv]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        header = out[0].split(",")
        assert header == ["bin_0", "bin_1", "tdomino_static"]
        # recomputed scores match the exported column
        with open(archive_csv) as fh:
            lines = fh.read().strip().splitlines()
        exported = [line.split(",")[-1] for line in lines[1:]]
        recomputed = [line.split(",")[-1] for line in out[1:]]
        assert exported == recomputed
