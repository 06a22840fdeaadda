"""Command line entry point.

Usage::

    figplot --inputs a.csv b.csv c.csv --labels L1 L2 L3 --out fig.png
            [--title T] [--tau-max X]

Exit codes: 0 on success, 1 when an input file is missing or violates
the trace CSV contract (the message names the file), 2 for bad usage
such as mismatched label counts or an unsupported output extension.
Nothing is written unless every input validates.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .reader import ContractError
from .render import FigureSpec, render

__all__ = ["build_parser", "run", "main"]


class _UsageError(Exception):
    """Raised instead of argparse's SystemExit so run can return 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="figplot",
        description="Render separability trace CSVs into one figure.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--inputs",
        nargs="+",
        required=True,
        metavar="CSV",
        help="trace CSV files, one per curve",
    )
    parser.add_argument(
        "--labels",
        nargs="+",
        required=True,
        metavar="LABEL",
        help="legend labels, one per input",
    )
    parser.add_argument(
        "--out",
        required=True,
        help="output image path, .png or .svg",
    )
    parser.add_argument("--title", default=None, help="optional figure title")
    parser.add_argument(
        "--tau-max",
        type=float,
        default=None,
        help="clip curves to tau <= this value",
    )
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, render the figure, and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"figplot: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        spec = FigureSpec.from_cli(
            inputs=args.inputs,
            labels=args.labels,
            out=args.out,
            title=args.title,
            tau_max=args.tau_max,
        )
        target = render(spec)
    except ContractError as exc:
        print(f"figplot: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"figplot: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"figplot: error: cannot write output ({exc})", file=sys.stderr)
        return 1

    print(target)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
