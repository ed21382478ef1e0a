"""Declarative experiment descriptions, parsed from INI-style files.

A config names a scenario, the sweep axis with its points, the solver list
(one section per solver, holding that solver's parameters), trial count,
base seed, and output path. Values stay strings until the scenario coerces
them, so scenarios own their parameter vocabulary.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

from ..exceptions import ConfigError

__all__ = ["ExperimentConfig", "CurvePoint", "parse_config", "parse_config_text"]

SWEEP_AXES = ("snr_db", "sparsity", "snapshots", "atoms")

METRICS = ("nmse_db", "ser", "support_prob", "mismatch", "validation_error")


@dataclass(frozen=True)
class CurvePoint:
    """One row of an output curve: metric value with a bootstrap 95% CI."""

    x: float
    metric: str
    value: float
    ci95: float
    trials: int

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; choose from {METRICS}")
        if self.ci95 < 0:
            raise ValueError("ci95 must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class ExperimentConfig:
    scenario: str
    sweep: str
    points: tuple
    trials: int
    seed: int
    out: str
    scenario_params: dict = field(default_factory=dict)
    solvers: dict = field(default_factory=dict)
    split_key: str | None = None

    def __post_init__(self):
        if self.sweep not in SWEEP_AXES:
            raise ConfigError(f"unknown sweep axis {self.sweep!r}; choose from {SWEEP_AXES}")
        if not self.points:
            raise ConfigError("the sweep needs at least one point")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        object.__setattr__(self, "points", tuple(float(x) for x in self.points))

    def split_values(self) -> list:
        """Values of the scenario key the run splits over ([None] when unsplit)."""
        if self.split_key is None:
            return [None]
        raw = self.scenario_params.get(self.split_key)
        if raw is None:
            raise ConfigError(f"split key {self.split_key!r} missing from [scenario]")
        return [v.strip() for v in raw.split(",") if v.strip()]


def _parse(parser: configparser.ConfigParser, source: str) -> ExperimentConfig:
    if not parser.has_section("experiment"):
        raise ConfigError(f"{source}: missing [experiment] section")
    exp = parser["experiment"]
    try:
        scenario = exp["scenario"]
        sweep = exp["sweep"]
        points = [float(v) for v in exp["points"].split(",") if v.strip()]
        trials = exp.getint("trials")
        seed = exp.getint("seed")
        out = exp.get("out", "curves.csv")
    except (KeyError, ValueError) as err:
        raise ConfigError(f"{source}: bad [experiment] section ({err})")
    split_key = exp.get("split_key", None)
    scenario_params = dict(parser["scenario"]) if parser.has_section("scenario") else {}
    solvers = {}
    for section in parser.sections():
        if section.startswith("solver:"):
            solvers[section.split(":", 1)[1]] = dict(parser[section])
    return ExperimentConfig(
        scenario=scenario, sweep=sweep, points=points, trials=trials,
        seed=seed, out=out, scenario_params=scenario_params, solvers=solvers,
        split_key=split_key,
    )


def parse_config(path) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    return _parse(parser, str(path))


def parse_config_text(text: str, source: str = "<string>") -> ExperimentConfig:
    parser = configparser.ConfigParser()
    parser.read_file(io.StringIO(text))
    return _parse(parser, source)


# Typed accessors for scenario parameter dictionaries.

def p_int(params: dict, key: str, default: int) -> int:
    try:
        return int(params.get(key, default))
    except ValueError:
        raise ConfigError(f"scenario parameter {key!r} must be an integer")


def p_float(params: dict, key: str, default: float) -> float:
    try:
        return float(params.get(key, default))
    except ValueError:
        raise ConfigError(f"scenario parameter {key!r} must be a number")


def p_str(params: dict, key: str, default: str) -> str:
    return str(params.get(key, default))
