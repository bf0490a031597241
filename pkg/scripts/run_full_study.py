#!/usr/bin/env python3
"""Reproduce every result in one run: build + invariant checks, the gap and
bound sweep, autocorrelation fits, the chain constancy scan, the dense-oracle
comparison, and (when hexcc-plots is installed) the four figures."""

import argparse
import os
import shutil
import subprocess
import sys

from hexcc.cli import main as hexcc_main


def run(args):
    print(f"$ hexcc {' '.join(args)}")
    rc = hexcc_main(args)
    if rc != 0:
        print(f"FAILED with exit code {rc}", file=sys.stderr)
        sys.exit(rc)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/full-study")
    ap.add_argument("--betas", default="0.25,0.5,1.0,2.0")
    args = ap.parse_args()
    out = args.out
    os.makedirs(out, exist_ok=True)

    run(["build", "--size", "3", "--out", f"{out}/build"])
    run(["check", "--size", "3", "--beta", args.betas, "--method", "both",
         "--out", f"{out}/check"])
    run(["gap", "--size", "3", "--beta", args.betas, "--out", f"{out}/gap"])
    run(["theorem", "--size", "3", "--beta", args.betas, "--out", f"{out}/theorem"])
    run(["autocorr", "--size", "3", "--beta", "1.0",
         "--observables", "Z1,Z3,Z1Z3", "--out", f"{out}/autocorr"])
    run(["ising-scan", "--beta", "1.0", "--lengths", "4,6,8,10",
         "--boundary", "periodic", "--out", f"{out}/ising-scan"])
    run(["oracle-compare", "--size", "3", "--beta", "1.0",
         "--out", f"{out}/oracle-compare"])

    if shutil.which("hexcc-plots"):
        figures = [
            ("decay", f"{out}/autocorr/autocorr.csv"),
            ("sweep", f"{out}/gap/gap_sweep.csv"),
            ("constancy", f"{out}/ising-scan/ising_scan.csv"),
            ("theorem", f"{out}/theorem/theorem.json"),
        ]
        os.makedirs(f"{out}/figures", exist_ok=True)
        for kind, src in figures:
            subprocess.run(
                ["hexcc-plots", "--kind", kind, "--input", src,
                 "--output", f"{out}/figures/{kind}.png"],
                check=True,
            )
        print(f"figures under {out}/figures")
    else:
        print("hexcc-plots not installed; skipped figures")
    print(f"study complete under {out}")


if __name__ == "__main__":
    main()
