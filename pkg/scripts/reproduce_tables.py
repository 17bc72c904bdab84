#!/usr/bin/env python3
"""Regenerate the two Andrica-difference tables as CSV files.

table1.csv: every consecutive-prime pair below 114 with its difference to
9 decimals.  table2.csv: the ten largest differences below 250, sorted
descending, 7 decimals.
"""

import argparse
import pathlib

from gaplab import cli


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out", type=pathlib.Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    t1 = args.outdir / "table1.csv"
    t2 = args.outdir / "table2.csv"
    rc = cli.main(["table1", "--limit", "114", "--out", str(t1)])
    rc |= cli.main(["table2", "--limit", "250", "--top", "10", "--out", str(t2)])
    if rc:
        raise SystemExit(rc)
    print(f"wrote {t1}")
    print(f"wrote {t2}")


if __name__ == "__main__":
    main()
