#!/usr/bin/env python3
"""Regenerate every preset rate-vs-distance dataset in one go.

Each preset bundles a channel, a source, and a leakage list; the sweep
subcommand writes a CSV plus a gnuplot script next to it.  Run gnuplot on
the .gp files afterwards if you want the pictures:

    python3 scripts/make_figures.py --out-dir figures
    cd figures && for f in *.gp; do gnuplot "$f"; done
"""

import argparse
import os
import sys

from thabound.cli import PRESET_NAMES, main as cli_main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="figures",
                        help="directory for the CSV/gnuplot outputs")
    parser.add_argument("--preset", action="append", choices=PRESET_NAMES,
                        help="run only these presets (default: all)")
    args = parser.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    names = args.preset or list(PRESET_NAMES)
    worst = 0
    for name in names:
        target = os.path.join(args.out_dir, f"{name}.csv")
        code = cli_main(["sweep", "--preset", name, "--output", target])
        worst = max(worst, code)
        if code != 0:
            print(f"preset {name} exited {code}", file=sys.stderr)
    return worst


if __name__ == "__main__":
    raise SystemExit(run())
