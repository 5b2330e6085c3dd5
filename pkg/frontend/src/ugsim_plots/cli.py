# CLI: `ugsim-plots render --csv PATH --out DIR`.
# Exit codes: 0 success, 1 usage/schema error, 2 I/O error.

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .render import SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugsim-plots",
        description="Render grouped-bar QoS charts from a sweep summary CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    render_cmd = sub.add_parser("render", help="render the four metric charts")
    render_cmd.add_argument("--csv", required=True, metavar="PATH",
                            help="sweep summary CSV")
    render_cmd.add_argument("--out", required=True, metavar="DIR",
                            help="output directory for PNG files")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        written = render(args.csv, args.out)
    except SchemaError as exc:
        print(f"ugsim-plots: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ugsim-plots: I/O error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
