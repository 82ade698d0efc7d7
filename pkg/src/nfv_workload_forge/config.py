"""Run configuration: TOML file plus command-line overrides."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping

import tomli

from .errors import ConfigError
from .rng import MASK64
from .traffic import SAMPLE_SPACING

ARCH_CHOICES = ("fat-tree", "vl2", "bcube")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    num_enterprises: int = 1
    nf_budget: int = 100
    catalog: dict[str, int] | None = None
    timeline: str | None = None
    threshold_L: float | None = None
    policies_per_change: int = 5
    window_minutes: int = 120
    arch: str = "fat-tree"
    requested_servers: int = 16
    k: int | None = None
    d_a: int | None = None
    d_i: int | None = None
    servers_per_tor: int = 20
    n: int | None = None
    max_paths: int = 8
    out: str = "out"

    def echo(self) -> dict[str, Any]:
        """Config as recorded in the manifest; the output directory is left out."""
        data = asdict(self)
        data.pop("out")
        return data

    def topology_knobs(self) -> dict[str, int]:
        if self.arch == "fat-tree":
            return {"k": self.k}
        if self.arch == "vl2":
            return {"d_a": self.d_a, "d_i": self.d_i, "servers_per_tor": self.servers_per_tor}
        return {"n": self.n, "k": self.k}


_FIELDS = {f.name for f in fields(RunConfig)}
_INT_KEYS = {
    "seed", "num_enterprises", "nf_budget", "policies_per_change", "window_minutes",
    "requested_servers", "k", "d_a", "d_i", "servers_per_tor", "n", "max_paths",
}


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def load_catalog(path: str | Path) -> dict[str, int]:
    """Read ``type = weight`` pairs from a TOML or JSON file, keeping file order."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("catalog", f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text) if path.suffix == ".json" else tomli.loads(text)
    except (ValueError, tomli.TOMLDecodeError) as exc:
        raise ConfigError("catalog", f"cannot parse {path}: {exc}") from None
    if isinstance(data, dict) and set(data) == {"catalog"}:
        data = data["catalog"]
    return data


def _check(key: str, value: Any) -> Any:
    if value is None:
        if key in ("catalog", "timeline", "threshold_L", "k", "d_a", "d_i", "n"):
            return None
        raise ConfigError(key, "must not be empty")
    if key in _INT_KEYS and not _is_int(value):
        raise ConfigError(key, f"expected an integer, got {type(value).__name__}")

    def need(cond, msg):
        if not cond:
            raise ConfigError(key, f"{msg}, got {value!r}")

    if key == "seed":
        need(0 <= value <= MASK64, "must be an unsigned 64-bit integer")
    elif key == "num_enterprises":
        need(value >= 1, "must be >= 1")
    elif key == "nf_budget":
        need(value >= 2, "must be >= 2")
    elif key == "threshold_L":
        need(_is_int(value) or isinstance(value, float), "expected a number")
        value = float(value)
        need(value > 0 and math.isfinite(value), "must be a positive rate")
    elif key == "policies_per_change":
        need(value >= 1, "must be >= 1")
    elif key == "window_minutes":
        need(value >= 1 and SAMPLE_SPACING % value == 0, f"must divide {SAMPLE_SPACING}")
    elif key == "arch":
        need(isinstance(value, str) and value in ARCH_CHOICES, f"must be one of {', '.join(ARCH_CHOICES)}")
    elif key == "requested_servers":
        need(value >= 1, "must be >= 1")
    elif key == "k":
        need(value >= 0, "must be non-negative")
    elif key in ("d_a", "d_i"):
        need(value >= 2 and value % 2 == 0, "must be even and >= 2")
    elif key == "servers_per_tor":
        need(value >= 1, "must be >= 1")
    elif key == "n":
        need(value >= 2, "must be >= 2")
    elif key == "max_paths":
        need(value >= 1, "must be >= 1")
    elif key in ("timeline", "out"):
        need(isinstance(value, str) and value, "expected a non-empty string")
    elif key == "catalog":
        if isinstance(value, str):
            value = load_catalog(value)
        need(isinstance(value, dict) and value, "expected a table of type = weight")
        for name, weight in value.items():
            if not _is_int(weight) or weight < 0:
                raise ConfigError(key, f"weight of {name!r} must be a non-negative integer")
        if sum(1 for w in value.values() if w > 0) < 2:
            raise ConfigError(key, "needs at least two types with positive weight")
        value = dict(value)
    return value


def parse_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    text: str | None = None,
) -> RunConfig:
    """Defaults, then the file (or ``text``), then ``overrides``; ``None`` overrides are ignored."""
    values: dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    if text is not None:
        try:
            values.update(tomli.loads(text))
        except tomli.TOMLDecodeError as exc:
            raise ConfigError("config", f"malformed config: {exc}") from None
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    unknown = sorted(set(values) - _FIELDS)
    if unknown:
        raise ConfigError(unknown[0], "unknown config key")
    checked = {key: _check(key, value) for key, value in values.items()}
    cfg = RunConfig(**checked)
    if cfg.arch == "fat-tree" and cfg.k is not None and (cfg.k < 2 or cfg.k % 2):
        raise ConfigError("k", f"must be even and >= 2 for a fat tree, got {cfg.k}")
    return cfg
