"""CLI: plot --input sweep.csv --figure fig2 --output fig2.png [--dpi 200]."""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError
from .render import FIGURE_PANELS, FigureSpec, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description="Render a sweep CSV into a figure image.")
    parser.add_argument("--input", required=True, help="sweep CSV produced by the eubsim CLI")
    parser.add_argument("--figure", required=True, choices=sorted(FIGURE_PANELS), help="figure layout")
    parser.add_argument("--output", required=True, help="output image path (format from extension)")
    parser.add_argument("--dpi", type=int, default=200)
    parser.add_argument(
        "--dump-data",
        metavar="PATH",
        help="also write the plotted arrays as JSON; they equal the CSV values exactly",
    )
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = FigureSpec(input_csv=args.input, figure_name=args.figure, output_path=args.output, dpi=args.dpi)
    try:
        render(spec, dump_path=args.dump_data)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
