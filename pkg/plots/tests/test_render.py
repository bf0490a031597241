"""Rendering: each figure kind produces a nonempty image from the fixtures,
deterministically, through both the API and the CLI."""

import os

import pytest

from hexcc_plots import FigureSpec, render
from hexcc_plots.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")

CASES = [
    ("decay", "decay.csv"),
    ("sweep", "gap_sweep.csv"),
    ("constancy", "ising_scan.csv"),
    ("theorem", "theorem.json"),
]


def fixture(name):
    return os.path.join(FIXTURES, name)


@pytest.mark.parametrize("kind,name", CASES)
def test_render_kind(kind, name, tmp_path):
    out = tmp_path / f"{kind}.png"
    got = render(FigureSpec(inputs=(fixture(name),), kind=kind, output=str(out)))
    assert got == str(out)
    assert out.stat().st_size > 1000


@pytest.mark.parametrize("kind,name", CASES)
def test_render_deterministic(kind, name, tmp_path):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    render(FigureSpec(inputs=(fixture(name),), kind=kind, output=str(a)))
    render(FigureSpec(inputs=(fixture(name),), kind=kind, output=str(b)))
    assert a.read_bytes() == b.read_bytes()


def test_svg_output(tmp_path):
    out = tmp_path / "d.svg"
    render(FigureSpec(inputs=(fixture("decay.csv"),), kind="decay", output=str(out)))
    text = out.read_text()
    assert "<svg" in text


def test_cli_success(tmp_path):
    out = tmp_path / "t.png"
    rc = main(["--kind", "theorem", "--input", fixture("theorem.json"),
               "--output", str(out)])
    assert rc == 0 and out.exists()


def test_cli_schema_error_is_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("observable,time,value,envelope\n")
    rc = main(["--kind", "decay", "--input", str(bad), "--output", str(tmp_path / "x.png")])
    assert rc == 1
    assert "time" in capsys.readouterr().err


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(ValueError):
        render(FigureSpec(inputs=(fixture("decay.csv"),), kind="pie", output="x.png"))


def test_missing_input_is_nonzero(tmp_path, capsys):
    rc = main(["--kind", "sweep", "--input", str(tmp_path / "nope.csv"),
               "--output", str(tmp_path / "x.png")])
    assert rc == 1
    assert "nope.csv" in capsys.readouterr().err
