"""Run-wide settings: tolerances, enumeration budgets, seed and output options.

A single :class:`Config` instance carries every numeric tolerance used by the
library so the property tests and the command line agree on what "close
enough" means.  The default can be replaced from a JSON file whose path is
given by the ``SUMSETS_CONFIG`` environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

CONFIG_ENV_VAR = "SUMSETS_CONFIG"


@dataclass(frozen=True)
class Config:
    bisection_tol: float = 1e-6
    float_tol: float = 1e-9
    average_cap: int = 10**6
    simplex_budget: int = 2_000_000
    exact_candidate_limit: int = 60
    grid_resolution: int = 40
    seed: int = 0
    output_dir: str = "."
    plot: bool = False

    def __post_init__(self):
        if self.bisection_tol <= 0 or self.float_tol <= 0:
            raise ValueError("tolerances must be positive")
        for name in ("average_cap", "simplex_budget", "exact_candidate_limit", "grid_resolution"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_(self, **changes) -> "Config":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Config":
        """Read a JSON config from ``path`` or from the env-var path, else defaults."""
        path = path or os.environ.get(CONFIG_ENV_VAR)
        if not path:
            return cls()
        with open(Path(path), encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


DEFAULT = Config()
