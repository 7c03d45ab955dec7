"""MAP-Elites with tournament-dominance ranking for multi-criteria exploration."""

from .archive import InsertOutcome, OutcomeKind, TDominoArchive, tdomino_score
from .baselines import ScalarArchive, weighted_sum
from .config import RunConfig, parse_config
from .core import (
    EvaluatedSolution,
    GridSpec,
    ProblemSpec,
    bin_index,
    canonicalize,
    neighbors_within,
)
from .emitters import CmaMeEmitter, GaussianEmitter
from .nsga2 import Nsga2, crowding_distance, dominates, fast_nondominated_sort
from .problems import make_problem, problem_ids

__all__ = [
    "CmaMeEmitter",
    "EvaluatedSolution",
    "GaussianEmitter",
    "GridSpec",
    "InsertOutcome",
    "Nsga2",
    "OutcomeKind",
    "ProblemSpec",
    "RunConfig",
    "ScalarArchive",
    "TDominoArchive",
    "bin_index",
    "canonicalize",
    "crowding_distance",
    "dominates",
    "fast_nondominated_sort",
    "make_problem",
    "neighbors_within",
    "parse_config",
    "problem_ids",
    "tdomino_score",
    "weighted_sum",
]
