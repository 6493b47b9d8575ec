"""Reproduce the two headline worker-count sweeps as CSV.

  figure-2 data: N versus z at s=4, t=15, z = 1..300, all five schemes
  figure-3 data: N versus (s, t) factorizations of st=36 at z=42

Usage: python scripts/sweep_figures.py [out_dir]
"""

import sys
from pathlib import Path

from cmpc.cli import main as cmpc_main


def run(out_dir="fig-data"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rc = cmpc_main(
        ["analyze", "--s", "4", "--t", "15", "--z", "1..300", "--all-schemes",
         "-o", str(out / "workers_vs_z.csv")]
    )
    rc |= cmpc_main(
        ["analyze", "--st", "36", "--z", "42", "--all-schemes",
         "-o", str(out / "workers_vs_split.csv")]
    )
    if rc:
        raise SystemExit(rc)
    print(f"wrote {out / 'workers_vs_z.csv'} and {out / 'workers_vs_split.csv'}")


if __name__ == "__main__":
    run(*sys.argv[1:])
