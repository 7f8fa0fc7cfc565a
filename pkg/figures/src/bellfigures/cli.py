"""figures: render bellherald sweep CSVs to image files.

    figures render --csv fig1.csv --figure fig1 --out-dir plots/
"""

import argparse
import sys

from .render import FIGURE_SETS, RenderError, render_figure_set


def build_parser():
    ap = argparse.ArgumentParser(prog="figures", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure set from a sweep CSV")
    p.add_argument("--csv", required=True, help="input sweep CSV")
    p.add_argument("--figure", required=True, choices=sorted(FIGURE_SETS), help="figure set")
    p.add_argument("--out-dir", required=True, help="output directory for the images")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        written = render_figure_set(args.figure, args.csv, args.out_dir)
    except (RenderError, OSError) as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
