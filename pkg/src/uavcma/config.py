"""Scenario files.

One ``key = value`` pair per line; blank lines and ``#`` comments are
ignored. Example::

    num_terminals = 10
    span_m        = 1000
    altitude_m    = 100
    power_dbm     = 10
    ref_snr_db    = 80
    speed_mps     = 30
    traj_length_m = 500      # optional
    epsilon       = 1e-5     # optional
    scheme        = optimal  # optional: optimal | equal
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .allocator import DEFAULT_EPSILON, SCHEMES
from .model import Scenario

REQUIRED = ("num_terminals", "span_m", "altitude_m", "power_dbm", "ref_snr_db", "speed_mps")
OPTIONAL = ("traj_length_m", "epsilon", "scheme")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: Scenario
    has_traj_length: bool
    epsilon: float = DEFAULT_EPSILON
    scheme: str = "optimal"


def _number(key, raw, lineno):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"line {lineno}: {key}: value must be finite")
    return value


def parse_scenario(text: str, source: str = "<config>") -> ScenarioConfig:
    entries = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ConfigError(f"{source}: line {lineno}: expected 'key = value'")
        if key not in REQUIRED and key not in OPTIONAL:
            raise ConfigError(f"{source}: line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"{source}: line {lineno}: duplicate key {key!r}")
        if not raw:
            raise ConfigError(f"{source}: line {lineno}: {key}: missing value")
        entries[key] = (raw, lineno)

    for key in REQUIRED:
        if key not in entries:
            raise ConfigError(f"{source}: missing required key {key!r}")

    values = {}
    for key, (raw, lineno) in entries.items():
        if key == "scheme":
            if raw not in SCHEMES:
                raise ConfigError(f"{source}: line {lineno}: scheme: expected one of {SCHEMES}, got {raw!r}")
            values[key] = raw
        elif key == "num_terminals":
            try:
                values[key] = int(raw)
            except ValueError:
                raise ConfigError(f"{source}: line {lineno}: num_terminals: expected an integer, got {raw!r}") from None
        else:
            values[key] = _number(key, raw, lineno)

    try:
        scenario = Scenario(
            num_terminals=values["num_terminals"],
            span=values["span_m"],
            altitude=values["altitude_m"],
            power_dbm=values["power_dbm"],
            ref_snr_db=values["ref_snr_db"],
            speed=values["speed_mps"],
            traj_length=values.get("traj_length_m", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    epsilon = values.get("epsilon", DEFAULT_EPSILON)
    if not epsilon > 0:
        raise ConfigError(f"{source}: line {entries['epsilon'][1]}: epsilon: must be > 0")
    return ScenarioConfig(scenario, "traj_length_m" in values, epsilon, values.get("scheme", "optimal"))


def load_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenario(text, str(path))
