"""Schema parsing: round trips, and loud failures naming the bad column."""

import pytest

from hexcc_plots import schemas

import os

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def test_decay_round_trip(tmp_path):
    table = schemas.load_decay(fixture("decay.csv"))
    assert len(table.labels()) == 2
    out = tmp_path / "again.csv"
    schemas.dump_decay(table, out)
    again = schemas.load_decay(out)
    assert again == table


def test_sweep_round_trip(tmp_path):
    table = schemas.load_sweep(fixture("gap_sweep.csv"))
    assert len(table.rows) == 4
    out = tmp_path / "s.csv"
    schemas.dump_sweep(table, out)
    assert schemas.load_sweep(out) == table


def test_scan_round_trip(tmp_path):
    table = schemas.load_scan(fixture("ising_scan.csv"))
    assert [r[0] for r in table.rows] == [4, 6, 8]
    out = tmp_path / "c.csv"
    schemas.dump_scan(table, out)
    assert schemas.load_scan(out) == table


def test_theorem_round_trip(tmp_path):
    doc = schemas.load_theorem(fixture("theorem.json"))
    assert doc.ok and len(doc.points) == 4
    out = tmp_path / "t.json"
    schemas.dump_theorem(doc, out)
    assert schemas.load_theorem(out) == doc


def test_bad_header_names_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("observable,t,value,envelop\nZ1,0.1,0.5,0.6\n")
    with pytest.raises(schemas.SchemaError, match="envelop"):
        schemas.load_decay(bad)


def test_non_numeric_names_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("beta,gap\n0.5,oops\n")
    with pytest.raises(schemas.SchemaError, match="gap"):
        schemas.load_sweep(bad)


def test_theorem_missing_key(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [{"beta": 1.0, "lhs_gap_tcc": 0.1}]}')
    with pytest.raises(schemas.SchemaError, match="rhs_bound"):
        schemas.load_theorem(bad)
