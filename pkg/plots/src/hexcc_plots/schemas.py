"""Readers/writers for the documented hexcc result formats.

This package never computes physics: it only parses the emitted files, and
parsing is schema-locked — a wrong or missing column fails loudly with the
offending name.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field


class SchemaError(ValueError):
    pass


DECAY_HEADER = ["observable", "t", "value", "envelope"]
SWEEP_HEADER = ["beta", "gap"]
SCAN_HEADER = ["L", "beta", "gap"]
THEOREM_POINT_KEYS = ("beta", "lhs_gap_tcc", "rhs_bound")


@dataclass
class DecayTable:
    """Autocorrelation rows grouped by observable label."""

    series: dict = field(default_factory=dict)  # label -> [(t, value, envelope)]

    def labels(self):
        return list(self.series)


@dataclass
class SweepTable:
    rows: list = field(default_factory=list)  # [(beta, gap)]


@dataclass
class ScanTable:
    rows: list = field(default_factory=list)  # [(L, beta, gap)]


@dataclass
class TheoremDoc:
    points: list = field(default_factory=list)  # [{beta, lhs_gap_tcc, rhs_bound}]
    ok: bool = True


def _read_rows(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {header}")
        if got != header:
            offending = next((c for c in got if c not in header), None)
            missing = next((c for c in header if c not in got), None)
            name = offending or missing
            raise SchemaError(f"{path}: bad header column {name!r}, expected {header}")
        return list(reader)


def _num(path, column, text):
    try:
        return float(text)
    except ValueError:
        raise SchemaError(f"{path}: column {column!r} has non-numeric value {text!r}")


def load_decay(path) -> DecayTable:
    table = DecayTable()
    for row in _read_rows(path, DECAY_HEADER):
        label = row[0]
        t = _num(path, "t", row[1])
        value = _num(path, "value", row[2])
        env = _num(path, "envelope", row[3])
        table.series.setdefault(label, []).append((t, value, env))
    return table


def dump_decay(table: DecayTable, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DECAY_HEADER)
        for label, rows in table.series.items():
            for t, value, env in rows:
                w.writerow([label, t, value, env])


def load_sweep(path) -> SweepTable:
    rows = [
        (_num(path, "beta", r[0]), _num(path, "gap", r[1]))
        for r in _read_rows(path, SWEEP_HEADER)
    ]
    return SweepTable(rows=rows)


def dump_sweep(table: SweepTable, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(table.rows)


def load_scan(path) -> ScanTable:
    rows = []
    for r in _read_rows(path, SCAN_HEADER):
        rows.append((int(_num(path, "L", r[0])), _num(path, "beta", r[1]), _num(path, "gap", r[2])))
    return ScanTable(rows=rows)


def dump_scan(table: ScanTable, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCAN_HEADER)
        w.writerows(table.rows)


def load_theorem(path) -> TheoremDoc:
    with open(path) as fh:
        doc = json.load(fh)
    if "points" not in doc:
        raise SchemaError(f"{path}: missing key 'points'")
    points = []
    for i, p in enumerate(doc["points"]):
        for key in THEOREM_POINT_KEYS:
            if key not in p:
                raise SchemaError(f"{path}: point {i} missing key {key!r}")
        points.append({k: p[k] for k in p})
    return TheoremDoc(points=points, ok=bool(doc.get("ok", True)))


def dump_theorem(doc: TheoremDoc, path):
    with open(path, "w") as fh:
        json.dump({"ok": doc.ok, "points": doc.points}, fh, indent=2, sort_keys=True)
        fh.write("\n")
