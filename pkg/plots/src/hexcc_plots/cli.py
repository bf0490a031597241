"""Command line: hexcc-plots --kind decay --input autocorr.csv --output out.png"""

from __future__ import annotations

import argparse
import sys

from . import schemas
from .render import KINDS, FigureSpec, render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="hexcc-plots", description=__doc__)
    ap.add_argument("--kind", choices=KINDS, required=True)
    ap.add_argument("--input", action="append", required=True,
                    help="input CSV/JSON (repeatable)")
    ap.add_argument("--output", required=True, help="PNG or SVG path")
    ap.add_argument("--linear-y", action="store_true", help="linear y axis")
    ap.add_argument("--linear-x", action="store_true", help="linear x axis")
    args = ap.parse_args(argv)
    spec = FigureSpec(
        inputs=tuple(args.input),
        kind=args.kind,
        output=args.output,
        logx=not args.linear_x,
        logy=not args.linear_y,
    )
    try:
        path = render(spec)
    except (schemas.SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
