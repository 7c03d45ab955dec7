"""Run configuration: flat-key TOML files with command-line overrides."""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, fields

from .core import ConfigurationError
from .problems import problem_ids

ALGORITHMS = ("tdomino", "me_single", "me_sum", "nsga2")


@dataclass
class RunConfig:
    problem: str = "rastrigin_moo"
    algo: str = "tdomino"
    grid_dims: tuple[int, ...] = (20, 20)
    neighbor_radius: int = 4
    history_capacity: int = 10
    emitters: int = 2
    batch_size: int = 200
    generations: int = 100
    replicates: int = 30
    seed: int = 0
    out: str = "runs"
    me_sum_weights: tuple[float, ...] | None = None
    me_single_index: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.problem not in problem_ids():
            raise ConfigurationError(
                f"unknown problem {self.problem!r}; valid ids: {', '.join(problem_ids())}")
        if self.algo not in ALGORITHMS:
            raise ConfigurationError(
                f"unknown algorithm {self.algo!r}; valid ids: {', '.join(ALGORITHMS)}")
        for key in ("neighbor_radius",):
            if getattr(self, key) < 0:
                raise ConfigurationError(f"{key} must be >= 0, got {getattr(self, key)}")
        if self.history_capacity < 0:
            raise ConfigurationError(f"history_capacity must be >= 0, got {self.history_capacity}")
        for key in ("emitters", "batch_size", "generations", "replicates"):
            value = getattr(self, key)
            if not isinstance(value, int) or value < 1:
                raise ConfigurationError(f"{key} must be a positive integer, got {value!r}")
        if any(not isinstance(d, int) or d < 1 for d in self.grid_dims):
            raise ConfigurationError(f"grid_dims must be positive integers, got {self.grid_dims}")
        if self.me_single_index < 0:
            raise ConfigurationError(f"me_single_index must be >= 0, got {self.me_single_index}")

    @property
    def population_size(self) -> int:
        # evaluation-budget parity between archives and NSGA-II
        return self.emitters * self.batch_size

    def replicate_seed(self, replicate: int) -> int:
        return self.seed + replicate


_FIELD_NAMES = {f.name for f in fields(RunConfig)}
_TUPLE_KEYS = {"grid_dims", "me_sum_weights"}


def parse_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Resolve a RunConfig from an optional TOML file plus override values;
    overrides win.  Unknown keys are rejected."""
    values: dict = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                values.update(tomllib.load(fh))
        except FileNotFoundError:
            raise ConfigurationError(f"config file not found: {path}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigurationError(f"invalid config file {path}: {exc}") from None
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    unknown = set(values) - _FIELD_NAMES
    if unknown:
        raise ConfigurationError(
            f"unknown config keys: {', '.join(sorted(unknown))}; "
            f"valid keys: {', '.join(sorted(_FIELD_NAMES))}")
    for key in _TUPLE_KEYS & set(values):
        if values[key] is not None:
            values[key] = tuple(values[key])
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from None
