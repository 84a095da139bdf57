#!/usr/bin/env python3
"""Sweep both noise families over p and write CSVs for plotting.

Werner noise: the plain three-basis witness crosses its bound 4 exactly
where the partial transpose goes negative (p = 1/3). Polarized noise: both
cross at p = 0, so every p > 0 is detected.
"""

import argparse
from pathlib import Path

from lurwit.cli import main as lurwit_main


def run(outdir: Path, steps: int) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for family in ("werner", "polarized"):
        out = outdir / f"{family}_sweep.csv"
        code = lurwit_main(
            [
                "sweep", "--noise", family,
                "--p-start", "0", "--p-stop", "1", "--p-steps", str(steps),
                "--out", str(out),
            ]
        )
        assert code == 0
        print(f"wrote {out}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("out"))
    parser.add_argument("--steps", type=int, default=101)
    args = parser.parse_args()
    run(args.outdir, args.steps)
