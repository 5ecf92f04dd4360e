"""Scenario documents.

A scenario is a YAML (or JSON) mapping::

    markets: [{a: 200}, {a: 150}, {a: 100}]
    firms: [{c: 20}, {c: 40}]
    d: 0.2
    simulation:          # optional
      T: 100
      mode: clipped
      initial: [[10, 10, 10], [5, 5, 5]]
      transient: 1000
      samples: 200

Unknown keys are rejected. Numbers are plain decimals with an optional
exponent; quoted values are not numbers. Errors carry the 1-based line and
column of the offending node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .errors import ScenarioError, ValidationError
from .model import GameConfig, Mode, ValidationReport, validate

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")
_INTEGER = re.compile(r"\+?\d+")

TOP_KEYS = {"markets", "firms", "d", "simulation"}
SIMULATION_KEYS = {"T", "mode", "initial", "transient", "samples"}


@dataclass(frozen=True)
class SimulationOptions:
    steps: int | None = None
    mode: Mode | None = None
    initial: np.ndarray | None = None
    transient: int | None = None
    samples: int | None = None


@dataclass(frozen=True)
class Scenario:
    config: GameConfig
    options: SimulationOptions
    report: ValidationReport
    source: str = ""


def _fail(node, message: str):
    mark = node.start_mark
    raise ScenarioError(message, mark.line + 1, mark.column + 1)


def _mapping(node, allowed: set[str], required: set[str], what: str) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for key_node, value_node in node.value:
        key = key_node.value
        if not isinstance(key_node, yaml.ScalarNode) or key not in allowed:
            _fail(key_node, f"unknown key {key!r} in {what}")
        if key in out:
            _fail(key_node, f"duplicate key {key!r} in {what}")
        out[key] = value_node
    missing = sorted(required - out.keys())
    if missing:
        _fail(node, f"missing key {missing[0]!r} in {what}")
    return out


def _sequence(node, what: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, f"{what} must be a list")
    return node.value


def _number(node, what: str) -> float:
    if not isinstance(node, yaml.ScalarNode) or node.style or not _NUMBER.fullmatch(node.value):
        _fail(node, f"{what} must be a number")
    return float(node.value)


def _integer(node, what: str) -> int:
    if not isinstance(node, yaml.ScalarNode) or node.style or not _INTEGER.fullmatch(node.value):
        _fail(node, f"{what} must be a non-negative integer")
    return int(node.value)


def _entries(node, key: str, what: str) -> list[float]:
    values = []
    for item in _sequence(node, what):
        fields = _mapping(item, {key}, {key}, f"{what} entry")
        values.append(_number(fields[key], f"{what}.{key}"))
    return values


def _simulation(node, shape: tuple[int, int]) -> SimulationOptions:
    fields = _mapping(node, SIMULATION_KEYS, set(), "simulation")
    opts = {}
    if "T" in fields:
        opts["steps"] = _integer(fields["T"], "simulation.T")
    for key in ("transient", "samples"):
        if key in fields:
            opts[key] = _integer(fields[key], f"simulation.{key}")
    if "mode" in fields:
        mode_node = fields["mode"]
        try:
            opts["mode"] = Mode(mode_node.value)
        except (ValueError, TypeError):
            _fail(mode_node, "simulation.mode must be 'raw' or 'clipped'")
    if "initial" in fields:
        rows = _sequence(fields["initial"], "simulation.initial")
        grid = [[_number(x, "simulation.initial entry") for x in _sequence(r, "simulation.initial row")] for r in rows]
        if len(grid) != shape[0] or any(len(r) != shape[1] for r in grid):
            _fail(fields["initial"], f"simulation.initial must be a {shape[0]}x{shape[1]} grid (firms x markets)")
        opts["initial"] = np.array(grid, dtype=float)
    return SimulationOptions(**opts)


def loads_scenario(text: str, source: str = "<string>") -> Scenario:
    """Parse and validate a scenario document; raises ScenarioError or ValidationError."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark
        raise ScenarioError(err.problem or str(err), mark.line + 1 if mark else None, mark.column + 1 if mark else None)
    if root is None:
        raise ScenarioError("empty scenario document", 1, 1)
    fields = _mapping(root, TOP_KEYS, {"markets", "firms", "d"}, "scenario")
    config = GameConfig(
        market_intercepts=_entries(fields["markets"], "a", "markets"),
        firm_costs=_entries(fields["firms"], "c", "firms"),
        scale=_number(fields["d"], "d"),
    )
    options = _simulation(fields["simulation"], config.shape) if "simulation" in fields else SimulationOptions()
    report = validate(config)
    if not report.ok:
        raise ValidationError(report)
    return Scenario(config, options, report, source)


def parse_scenario(path) -> Scenario:
    path = Path(path)
    return loads_scenario(path.read_text(encoding="utf-8"), str(path))


def dumps_scenario(config: GameConfig) -> str:
    doc = {
        "markets": [{"a": a} for a in config.market_intercepts],
        "firms": [{"c": c} for c in config.firm_costs],
        "d": config.scale,
    }
    return yaml.safe_dump(doc, sort_keys=False)
