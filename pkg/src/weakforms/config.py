"""Runtime configuration.

Settings come from (highest priority first): explicit constructor arguments,
a JSON config file, built-in defaults.  The config file path may be passed
directly or taken from the WEAKFORMS_CONFIG environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

_PACKAGE_SEED_DIR = Path(__file__).resolve().parent / "data" / "seeds"


@dataclass
class Config:
    seed_dir: str = str(_PACKAGE_SEED_DIR)
    cache_dir: str = ""          # empty string disables the on-disk cache
    default_trunc: int = 64
    precision_bits: int = 256
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.default_trunc < 64:
            raise ValueError(f"default_trunc must be at least 64, got {self.default_trunc}")
        if self.precision_bits < 64:
            raise ValueError(f"precision_bits must be at least 64, got {self.precision_bits}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def load_config(path: str | None = None, **overrides) -> Config:
    """Build a Config from an optional JSON file plus keyword overrides."""
    data: dict = {}
    if path is None:
        path = os.environ.get("WEAKFORMS_CONFIG")
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise FileNotFoundError(f"config file not found: {path}")
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path} is not valid JSON: {exc}")
        known = {f.name for f in fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {sorted(unknown)}")
    data.update(overrides)
    return Config(**data)
