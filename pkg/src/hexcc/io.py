"""File emission: deterministic JSON and CSV writers plus the documented
result schemas consumed by the plotting package."""

from __future__ import annotations

import csv
import json
import os

import numpy as np


def write_json(path, obj):
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline.
    Identical inputs produce byte-identical files."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(_plain(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_csv(path, header, rows):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_plain(v) for v in row])


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]


def _plain(obj):
    """Recursively convert numpy scalars/arrays for the json module."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def gap_result_to_dict(res) -> dict:
    """Schema: gap summary JSON (one object per beta point)."""
    return {
        "beta": res.beta,
        "j": res.j,
        "density": res.density,
        "global_gap": res.global_gap,
        "kernel_dim": res.kernel_dim,
        "sector_minima": dict(res.sector_minima),
        "selfadjoint_residual": res.selfadjoint_residual,
        "gram_cond": res.gram_cond,
        "ising_gap": res.ising_gap,
        "ising_length": res.ising_length,
        "bound_rhs": res.bound_rhs,
        "theorem_ok": res.theorem_ok,
        "slack": res.slack,
    }


AUTOCORR_CSV_HEADER = ["observable", "t", "value", "envelope"]
ISING_CSV_HEADER = ["L", "beta", "gap"]
SWEEP_CSV_HEADER = ["beta", "gap"]


def autocorr_rows(series, env):
    return [
        [series.label, t, v, e]
        for t, v, e in zip(series.times, series.values, env)
    ]
