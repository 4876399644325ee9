"""Run configuration: resource bounds, worker budget and output options.

Configuration files are JSON objects whose keys mirror the fields of
``Config``; unknown keys are rejected so typos do not go unnoticed.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path


@dataclass(frozen=True)
class Limits:
    max_module_dim: int = 20_000
    max_matrix_entries: int = 5_000_000


@dataclass(frozen=True)
class Config:
    limits: Limits = Limits()
    jobs: int = 1
    timing: bool = True
    max_functor_degree: int = 8

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: str | Path | None, **overrides) -> Config:
    raw: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text())
        if not isinstance(raw, dict):
            raise ValueError("configuration file must hold a JSON object")
    known = {f.name for f in fields(Config)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
    lim_raw = raw.pop("limits", {}) or {}
    lim_known = {f.name for f in fields(Limits)}
    if set(lim_raw) - lim_known:
        raise ValueError(f"unknown limit keys: {sorted(set(lim_raw) - lim_known)}")
    limits = Limits(**lim_raw)
    lim_over = {k: overrides.pop(k) for k in list(overrides) if k in lim_known}
    lim_over = {k: v for k, v in lim_over.items() if v is not None}
    if lim_over:
        limits = Limits(**{**asdict(limits), **lim_over})
    raw.update({k: v for k, v in overrides.items() if v is not None})
    cfg = Config(limits=limits, **raw)
    if cfg.jobs < 1:
        raise ValueError("jobs must be >= 1")
    return cfg
