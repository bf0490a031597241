"""End-to-end CLI runs on temp directories: outputs, schemas, exit codes,
byte-determinism, TOML config with flag override."""

import json
import os

import pytest

from hexcc import io
from hexcc.cli import main


def run(args):
    return main(args)


def test_build_outputs(tmp_path):
    out = tmp_path / "b"
    assert run(["build", "--size", "6", "--out", str(out)]) == 0
    lat = io.read_json(out / "lattice.json")
    assert lat["n_plaquettes"] == 6
    assert len(lat["vertices"]) == 12
    build = io.read_json(out / "build.json")
    assert build["stabilizer_rank"] == 8
    assert build["ground_degeneracy"] == 16


def test_invalid_size_exit_code(tmp_path):
    assert run(["build", "--size", "5", "--out", str(tmp_path / "x")]) == 2


def test_invalid_density_exit_code(tmp_path):
    # argparse rejects bad choices itself with exit status 2
    with pytest.raises(SystemExit) as exc:
        run(["gap", "--density", "weird", "--out", str(tmp_path / "x")])
    assert exc.value.code == 2
    # values that bypass argparse (via TOML) are caught by config validation
    cfg = tmp_path / "bad.toml"
    cfg.write_text('[run]\ndensity = "weird"\n')
    assert run(["gap", "--config", str(cfg), "--out", str(tmp_path / "y")]) == 2


def test_check_passes(tmp_path):
    out = tmp_path / "c"
    code = run(["check", "--size", "3", "--beta", "0.5,1.0", "--out", str(out)])
    assert code == 0
    doc = io.read_json(out / "check.json")
    assert all(entry["ok"] for entry in doc["checks"])


def test_theorem_and_determinism(tmp_path):
    out1, out2 = tmp_path / "t1", tmp_path / "t2"
    assert run(["theorem", "--size", "3", "--beta", "0.5,1.0", "--out", str(out1)]) == 0
    assert run(["theorem", "--size", "3", "--beta", "0.5,1.0", "--out", str(out2)]) == 0
    b1 = (out1 / "theorem.json").read_bytes()
    b2 = (out2 / "theorem.json").read_bytes()
    assert b1 == b2
    doc = json.loads(b1)
    assert doc["ok"] and len(doc["points"]) == 2
    assert doc["points"][0]["slack"] >= -1e-10


def test_gap_outputs(tmp_path):
    out = tmp_path / "g"
    assert run(["gap", "--size", "3", "--beta", "1.0", "--jobs", "1", "--out", str(out)]) == 0
    doc = io.read_json(out / "gap.json")
    point = doc["points"][0]
    assert point["global_gap"] > 0
    assert len(point["sector_minima"]) == 32
    header, rows = io.read_csv(out / "gap_sweep.csv")
    assert header == io.SWEEP_CSV_HEADER and len(rows) == 1


def test_autocorr_outputs(tmp_path):
    out = tmp_path / "a"
    rc = run([
        "autocorr", "--size", "3", "--beta", "1.0",
        "--observables", "Z1,X2,Z1Z3", "--t-points", "25", "--out", str(out),
    ])
    assert rc == 0
    header, rows = io.read_csv(out / "autocorr.csv")
    assert header == io.AUTOCORR_CSV_HEADER
    assert len(rows) == 3 * 25
    doc = io.read_json(out / "autocorr.json")
    entry = doc["Z1@beta=1"]
    assert entry["monotone"] and entry["envelope_ok"] and entry["rate_consistent"]
    assert entry["sector"] == "Z:1000|X:0000"


def test_autocorr_pauli_string_observable(tmp_path):
    out = tmp_path / "ap"
    rc = run([
        "autocorr", "--size", "3", "--beta", "0.5",
        "--observables", "+ZIIZII", "--out", str(out),
    ])
    assert rc == 0


def test_ising_scan(tmp_path):
    out = tmp_path / "i"
    rc = run([
        "ising-scan", "--beta", "1.0", "--lengths", "4,6",
        "--boundary", "periodic", "--out", str(out),
    ])
    assert rc == 0
    header, rows = io.read_csv(out / "ising_scan.csv")
    assert header == io.ISING_CSV_HEADER
    assert [int(r[0]) for r in rows] == [4, 6]
    doc = io.read_json(out / "ising_scan.json")
    assert doc["max_rel_deviation"] < 0.05


def test_ising_scan_range_syntax(tmp_path):
    out = tmp_path / "ir"
    rc = run(["ising-scan", "--beta", "1.0", "--lengths", "2..4",
              "--boundary", "open", "--out", str(out)])
    assert rc == 0
    _, rows = io.read_csv(out / "ising_scan.csv")
    assert [int(r[0]) for r in rows] == [2, 3, 4]


def test_oracle_compare(tmp_path):
    out = tmp_path / "o"
    rc = run(["oracle-compare", "--size", "3", "--beta", "1.0",
              "--extra-random", "2", "--out", str(out)])
    assert rc == 0
    doc = io.read_json(out / "oracle_compare.json")
    assert doc["ok"] and doc["max_spectrum_deviation"] <= 1e-8


def test_toml_config_with_flag_override(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[run]\nsize = 6\nbetas = [0.5]\nout = "SHOULD_BE_OVERRIDDEN"\n')
    out = tmp_path / "cfgout"
    rc = run(["build", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    doc = io.read_json(out / "build.json")
    assert doc["n_plaquettes"] == 6  # from TOML
    echo = io.read_json(out / "config.json")
    assert echo["out"] == str(out)  # flag wins


def test_output_root_env(tmp_path, monkeypatch):
    monkeypatch.setenv("HEXCC_OUTPUT_ROOT", str(tmp_path / "root"))
    monkeypatch.chdir(tmp_path)
    assert run(["build", "--size", "3"]) == 0
    assert (tmp_path / "root" / "build" / "lattice.json").exists()
