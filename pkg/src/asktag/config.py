"""Flat key=value run-configuration files for the CLI.

One assignment per line, ``#`` starts a comment, values are SI base units
with optional suffixes: power keys accept W/mW/uW/nW/pW or dBm, frequency
keys Hz/kHz/MHz/GHz, distance keys m/cm/mm/km.  Unknown keys and duplicate
keys are errors -- configs are meant to diff cleanly and fail loudly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields

from .feasibility import DesignConstraints
from .linkbudget import LinkConfig
from .reflection import ComplexImpedance


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


_NUMBER_WITH_UNIT = re.compile(r"^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*([A-Za-z]*)$")

_POWER_UNITS = {"": 1.0, "W": 1.0, "mW": 1e-3, "uW": 1e-6, "nW": 1e-9,
                "pW": 1e-12}
_FREQ_UNITS = {"": 1.0, "Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
_DIST_UNITS = {"": 1.0, "m": 1.0, "cm": 1e-2, "mm": 1e-3, "km": 1e3}

_LINK_FLOAT_KEYS = {
    "speed_of_light", "tag_gain", "reader_gain", "path_loss_exponent",
    "harvest_efficiency", "backscatter_efficiency", "reader_resistance",
}
_PLAIN_FLOAT_KEYS = _LINK_FLOAT_KEYS | {
    "p_one", "m_th", "antenna_resistance", "antenna_reactance",
    "sweep_start", "sweep_stop", "verify_step",
}
_POWER_KEYS = {"transmit_power", "noise_power", "p_l_min", "p_b_min"}
_FREQ_KEYS = {"frequency"}
_DIST_KEYS = {"reference_distance", "distance"}
_INT_KEYS = {"order", "sweep_count", "seed", "trials"}
_STR_KEYS = {"sweep_variable", "out"}

KNOWN_KEYS = (_PLAIN_FLOAT_KEYS | _POWER_KEYS | _FREQ_KEYS | _DIST_KEYS
              | _INT_KEYS | _STR_KEYS)

SWEEP_VARIABLES = ("p_one", "m_th", "distance", "path_loss_exponent")


@dataclass(frozen=True)
class SweepAxis:
    """One swept variable over an inclusive linear range."""

    variable: str
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs, already validated and in SI units."""

    link: LinkConfig
    constraints: DesignConstraints
    order: int
    p_one: float
    antenna: ComplexImpedance
    sweep: SweepAxis | None
    seed: int
    trials: int
    verify_step: float
    out: str | None


def _number(text: str, units: dict[str, float], key: str,
            dbm_ok: bool = False) -> float:
    match = _NUMBER_WITH_UNIT.match(text)
    if not match:
        raise ConfigError(f"cannot parse value {text!r} for key {key!r}")
    try:
        value = float(match.group(1))
    except ValueError:
        raise ConfigError(f"cannot parse number in {text!r} for key {key!r}")
    unit = match.group(2)
    if dbm_ok and unit == "dBm":
        return 10.0 ** ((value - 30.0) / 10.0)
    if unit not in units:
        raise ConfigError(f"unknown unit {unit!r} for key {key!r}")
    return value * units[unit]


def _parse_pairs(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        pairs[key] = value
    return pairs


def parse_config(text: str) -> RunConfig:
    """Parse config text into a validated :class:`RunConfig`.

    Raises:
        ConfigError: for syntax problems, unknown keys, or values the
            domain types reject.
    """
    pairs = _parse_pairs(text)
    parsed: dict[str, object] = {}
    for key, value in pairs.items():
        if key in _POWER_KEYS:
            if key == "p_b_min" and value.lower() in {"none", "off"}:
                parsed[key] = None
            else:
                parsed[key] = _number(value, _POWER_UNITS, key, dbm_ok=True)
        elif key in _FREQ_KEYS:
            parsed[key] = _number(value, _FREQ_UNITS, key)
        elif key in _DIST_KEYS:
            parsed[key] = _number(value, _DIST_UNITS, key)
        elif key in _PLAIN_FLOAT_KEYS:
            parsed[key] = _number(value, {"": 1.0}, key)
        elif key in _INT_KEYS:
            try:
                parsed[key] = int(value)
            except ValueError:
                raise ConfigError(f"key {key!r} needs an integer, got {value!r}")
        else:
            parsed[key] = value

    link_keys = {f.name for f in fields(LinkConfig)}
    link_kwargs = {k: v for k, v in parsed.items() if k in link_keys}
    try:
        link = LinkConfig(**link_kwargs)
        constraints = DesignConstraints(
            m_th=float(parsed.get("m_th", 0.1)),
            p_l_min=float(parsed.get("p_l_min", 5e-6)),
            p_b_min=parsed.get("p_b_min", 3e-6))
        antenna = ComplexImpedance(
            resistance=float(parsed.get("antenna_resistance", 50.0)),
            reactance=float(parsed.get("antenna_reactance", 0.0)))
    except ValueError as exc:
        raise ConfigError(str(exc))

    p_one = float(parsed.get("p_one", 0.5))
    if not 0.0 <= p_one <= 1.0:
        raise ConfigError("p_one must lie in [0, 1]")
    order = int(parsed.get("order", 2))
    if order < 2 or order & (order - 1):
        raise ConfigError("order must be a power of two >= 2")
    seed = int(parsed.get("seed", 0))
    if seed < 0:
        raise ConfigError("seed must be non-negative")
    trials = int(parsed.get("trials", 0))
    if trials < 0:
        raise ConfigError("trials must be non-negative")
    verify_step = float(parsed.get("verify_step", 1e-3))
    if not 0.0 < verify_step <= 0.01:
        raise ConfigError("verify_step must lie in (0, 0.01]")

    sweep_given = [k for k in ("sweep_variable", "sweep_start", "sweep_stop",
                               "sweep_count") if k in parsed]
    sweep = None
    if sweep_given:
        if len(sweep_given) != 4:
            raise ConfigError(
                "sweep needs all of sweep_variable/sweep_start/"
                "sweep_stop/sweep_count")
        variable = str(parsed["sweep_variable"])
        if variable not in SWEEP_VARIABLES:
            raise ConfigError(
                f"sweep_variable must be one of {', '.join(SWEEP_VARIABLES)}")
        count = int(parsed["sweep_count"])
        if count < 2:
            raise ConfigError("sweep_count must be >= 2")
        start = float(parsed["sweep_start"])
        stop = float(parsed["sweep_stop"])
        if not (math.isfinite(start) and math.isfinite(stop)):
            raise ConfigError("sweep range must be finite")
        sweep = SweepAxis(variable=variable, start=start, stop=stop,
                          count=count)

    return RunConfig(link=link, constraints=constraints, order=order,
                     p_one=p_one, antenna=antenna, sweep=sweep, seed=seed,
                     trials=trials, verify_step=verify_step,
                     out=parsed.get("out"))


def load_config(path: str) -> RunConfig:
    """Read and parse a config file (UTF-8)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    return parse_config(text)
