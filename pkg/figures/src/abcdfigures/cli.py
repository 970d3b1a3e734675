"""`figures --spec F` entry point."""

import argparse
import sys

from .render import FigureError, load_figure_spec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render an experiment CSV into a figure"
    )
    parser.add_argument("--spec", required=True, help="figure spec file (key=value lines)")
    args = parser.parse_args(argv)
    try:
        out = render(load_figure_spec(args.spec))
    except (FigureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
