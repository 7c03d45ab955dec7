"""Command line entry points: `tdomino run` and `tdomino score`."""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import kernels
from .config import parse_config
from .core import ConfigurationError
from .harness import run_experiment


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdomino",
        description="Quality-diversity experiments with tournament-dominance ranking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment (all replicates)")
    run.add_argument("--config", help="TOML config file with flat keys")
    run.add_argument("--problem", help="benchmark id")
    run.add_argument("--algo", help="one of tdomino, me_single, me_sum, nsga2")
    run.add_argument("--gens", type=int, dest="generations", help="generations per replicate")
    run.add_argument("--reps", type=int, dest="replicates", help="number of replicates")
    run.add_argument("--seed", type=int, help="base seed (replicate k uses seed+k)")
    run.add_argument("--out", help="output directory")

    score = sub.add_parser("score", help="recompute static scores for an exported archive")
    score.add_argument("--archive", required=True, help="archive.csv produced by `run`")
    return parser


def _cmd_run(args) -> int:
    overrides = {
        key: getattr(args, key)
        for key in ("problem", "algo", "generations", "replicates", "seed", "out")
    }
    config = parse_config(args.config, overrides)
    return run_experiment(config)


def _cmd_score(args) -> int:
    with open(args.archive, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    bin_cols = [i for i, h in enumerate(header) if h.startswith("bin_")]
    obj_cols = [i for i, h in enumerate(header)
                if h.startswith("obj_") and not h.startswith("obj_raw")]
    if not obj_cols:
        raise ConfigurationError(f"no canonical objective columns in {args.archive}")
    objs = np.array([[float(r[i]) for i in obj_cols] for r in rows])
    scores = kernels.tdomino_scores_batch(objs, objs) if len(rows) else []
    writer = csv.writer(sys.stdout)
    writer.writerow([header[i] for i in bin_cols] + ["tdomino_static"])
    for row, score in zip(rows, scores):
        writer.writerow([row[i] for i in bin_cols] + [int(score)])
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_score(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
