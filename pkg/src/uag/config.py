"""Runtime configuration: caps, window bounds, seed, output format."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

from .errors import FileFormatError
from .geometry import UniverseBound

__all__ = ["Config", "load_config", "ENV_VAR"]

ENV_VAR = "UAG_CONFIG"


@dataclass
class Config:
    assignment_cap: int = 10**6
    lattice_point_cap: int = 16
    clone_cap: int = 4096
    hom_cap: int = 10**6
    compile_cap: int = 4096
    depth: int = 2
    max_vars: int = 2
    max_pairs: int = 72
    system_size: int = 2
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        for f in fields(self):
            if f.name in ("format",):
                continue
            v = getattr(self, f.name)
            if f.name != "seed" and v <= 0:
                raise FileFormatError(f"config value {f.name} must be positive")

    def bound(self) -> UniverseBound:
        return UniverseBound(self.depth, self.max_vars, self.max_pairs)


def load_config(path: str | None = None) -> Config:
    """Explicit path, else the UAG_CONFIG environment variable, else defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return Config()
    try:
        data = json.loads(open(path).read())
    except (OSError, json.JSONDecodeError) as err:
        raise FileFormatError(f"cannot read config {path}: {err}") from None
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise FileFormatError(f"unknown config keys {sorted(unknown)}")
    return Config(**data)
