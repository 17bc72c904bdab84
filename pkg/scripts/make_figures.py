#!/usr/bin/env python3
"""Emit the figure data CSVs plus companion gnuplot scripts.

figure1: observed R at every maximal-gap record (computed records merged
with the bundled 75-record reference list) against the kernel prediction
fed by the pi-based gap model.  figure2: the same records against the
closed Cramer form and the Shanks-kernel variant.

Render with e.g.:  gnuplot -p out/figure1.gp
"""

import argparse
import pathlib

from gaplab import cli
from importlib import resources


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out", type=pathlib.Path)
    ap.add_argument("--limit", default="1e6",
                    help="sieve bound for computed records and exact prime counts")
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    ref = resources.files("gaplab").joinpath("data/maximal_gaps.txt")
    with resources.as_file(ref) as ref_path:
        for name in ("figure1", "figure2"):
            csv = args.outdir / f"{name}.csv"
            gp = args.outdir / f"{name}.gp"
            rc = cli.main([
                name, "--limit", args.limit, "--ref", str(ref_path),
                "--out", str(csv), "--emit-gnuplot", str(gp),
            ])
            if rc:
                raise SystemExit(rc)
            print(f"wrote {csv} and {gp}")


if __name__ == "__main__":
    main()
