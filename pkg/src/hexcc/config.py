"""Run configuration: TOML file plus command-line overrides (flags win)."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, fields

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


DEFAULT_BETAS = (0.25, 0.5, 1.0, 2.0)


@dataclass
class RunConfig:
    size: int = 3
    betas: tuple = DEFAULT_BETAS
    j: float = 1.0
    density: str = "flat"
    observables: tuple = ("Z1",)
    t_min: float = 1e-2
    t_max: float = 1e2
    t_points: int = 40
    out: str | None = None
    method: str = "structured"  # structured | dense-oracle | both
    jobs: int = 0  # 0 = all cores
    kernel_tol: float = 1e-9
    lengths: tuple = (4, 6, 8, 10)
    boundary: str = "periodic"  # ising-scan default: the bulk-gap geometry

    def validate(self):
        problems = []
        if self.size < 3 or self.size % 3:
            problems.append(f"size {self.size} is not a multiple of 3")
        if not self.betas:
            problems.append("no beta values selected")
        if any(b <= 0 for b in self.betas):
            problems.append("beta values must be positive")
        if self.j <= 0:
            problems.append("j must be positive")
        if self.density not in ("flat", "ohmic"):
            problems.append(f"unknown density {self.density!r}")
        if self.method not in ("structured", "dense-oracle", "both"):
            problems.append(f"unknown method {self.method!r}")
        if self.method in ("dense-oracle", "both") and self.size != 3:
            problems.append("dense oracle requires 2N <= 8 qubits, i.e. the minimal lattice (size 3)")
        if self.t_points < 2 or self.t_min <= 0 or self.t_max <= self.t_min:
            problems.append("invalid time grid")
        if self.boundary not in ("open", "periodic"):
            problems.append(f"unknown boundary {self.boundary!r}")
        return problems

    @property
    def effective_jobs(self) -> int:
        return self.jobs if self.jobs > 0 else (os.cpu_count() or 1)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_config(path=None, overrides=None) -> RunConfig:
    """Config from TOML [run] table (or top level), then flag overrides."""
    data = {}
    if path:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
        data = doc.get("run", doc)
    cfg = RunConfig()
    known = {f.name for f in fields(RunConfig)}
    for src in (data, overrides or {}):
        for key, value in src.items():
            if value is None:
                continue
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            if key in ("betas", "observables", "lengths"):
                value = tuple(value)
            setattr(cfg, key, value)
    return cfg


def output_dir(cfg: RunConfig, command: str) -> str:
    if cfg.out:
        return cfg.out
    root = os.environ.get("HEXCC_OUTPUT_ROOT", "runs")
    return os.path.join(root, command)
