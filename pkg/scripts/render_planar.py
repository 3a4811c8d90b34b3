"""Render the four planar catalog examples as PGM images.

    python3 scripts/render_planar.py --size 512 --outdir images
"""

import argparse
from pathlib import Path

from grs.fileio import write_pgm
from grs.weights import catalog_matrix

NAMES = ("fig1_a", "fig1_b", "fig1_c", "fig1_d")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--outdir", default="images")
    args = ap.parse_args(argv)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        path = outdir / f"{name}.pgm"
        write_pgm(catalog_matrix(name), (args.size, args.size), path)
        print(path)


if __name__ == "__main__":
    main()
