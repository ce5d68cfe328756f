"""``render`` command: one figure per invocation from a qecorr CSV."""

from __future__ import annotations

import argparse
import sys

from qecorr_figures.render import RENDERERS, FigureSpec


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="render", description="Render figures from qecorr CSV outputs.")
    parser.add_argument("--kind", required=True, choices=sorted(RENDERERS))
    parser.add_argument("--in", dest="input", required=True, help="input CSV path")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--no-labels", action="store_true", help="skip axis labels and legend")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.input, output=args.out, kind=args.kind, labels=not args.no_labels
    )
    try:
        RENDERERS[spec.kind](spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
