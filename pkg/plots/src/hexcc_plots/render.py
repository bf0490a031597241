"""Figure rendering for the four result kinds: decay curves with fitted
envelopes, gap-vs-beta sweeps, chain-gap constancy, and bound comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import schemas

KINDS = ("decay", "sweep", "constancy", "theorem")


@dataclass(frozen=True)
class FigureSpec:
    inputs: tuple
    kind: str
    output: str
    logx: bool = True
    logy: bool = True


def render(spec: FigureSpec) -> str:
    """Render the figure described by spec; returns the output path."""
    if spec.kind not in KINDS:
        raise ValueError(f"unknown figure kind {spec.kind!r}; choose from {KINDS}")
    if not spec.inputs:
        raise ValueError("no input files")
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    try:
        _DISPATCH[spec.kind](ax, spec)
        fig.tight_layout()
        metadata = {"Date": None} if spec.output.endswith(".svg") else {}
        fig.savefig(spec.output, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.output


def _render_decay(ax, spec):
    table = schemas.load_decay(spec.inputs[0])
    for label, rows in table.series.items():
        t = np.array([r[0] for r in rows])
        v = np.array([r[1] for r in rows])
        env = np.array([r[2] for r in rows])
        (line,) = ax.plot(t, v, marker=".", label=label)
        ax.plot(t, env, linestyle="--", linewidth=1.0, color=line.get_color(), alpha=0.6)
    ax.set_xlabel("t [1/J]")
    ax.set_ylabel("autocorrelation")
    if spec.logx:
        ax.set_xscale("log")
    ax.set_yscale("log" if spec.logy else "linear")
    ax.legend(fontsize=8)
    ax.set_title("observable decay with exponential envelopes")


def _render_sweep(ax, spec):
    table = schemas.load_sweep(spec.inputs[0])
    beta = [b for b, _ in table.rows]
    gap = [g for _, g in table.rows]
    ax.plot(beta, gap, marker="o")
    ax.set_xlabel("beta J")
    ax.set_ylabel("gap of -L")
    if spec.logy:
        ax.set_yscale("log")
    ax.set_title("spectral gap vs inverse temperature")


def _render_constancy(ax, spec):
    table = schemas.load_scan(spec.inputs[0])
    lengths = [r[0] for r in table.rows]
    gaps = np.array([r[2] for r in table.rows])
    rel = float((gaps.max() - gaps.min()) / gaps.min()) if gaps.size else 0.0
    ax.axhspan(gaps.min(), gaps.max(), alpha=0.15, color="tab:green")
    ax.plot(lengths, gaps, marker="s", color="tab:green")
    ax.set_xlabel("chain length L")
    ax.set_ylabel("chain gap")
    ax.set_ylim(0, gaps.max() * 1.5)
    ax.annotate(f"max relative deviation: {rel:.2%}",
                xy=(0.03, 0.92), xycoords="axes fraction", fontsize=9)
    ax.set_title("chain gap is size-constant")


def _render_theorem(ax, spec):
    doc = schemas.load_theorem(spec.inputs[0])
    betas = [p["beta"] for p in doc.points]
    lhs = [p["lhs_gap_tcc"] for p in doc.points]
    rhs = [p["rhs_bound"] for p in doc.points]
    x = np.arange(len(betas))
    width = 0.38
    ax.bar(x - width / 2, lhs, width, label="gap")
    ax.bar(x + width / 2, rhs, width, label="bound")
    ax.set_xticks(x, [f"{b:g}" for b in betas])
    ax.set_xlabel("beta J")
    ax.set_ylabel("rate")
    if spec.logy:
        ax.set_yscale("log")
    ax.legend()
    ax.set_title("gap vs instability bound" + ("" if doc.ok else " (VIOLATED)"))


_DISPATCH = {
    "decay": _render_decay,
    "sweep": _render_sweep,
    "constancy": _render_constancy,
    "theorem": _render_theorem,
}
