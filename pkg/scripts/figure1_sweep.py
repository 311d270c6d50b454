"""Slope of the (1/H)-th variation against H for 5*tent and sin/2, b = 2..5.

Writes one CSV per panel (header H,q,slope,error,method,b,phi).  Plotting is
left to whatever tool reads the CSV.
"""

import argparse
import csv
from pathlib import Path

from fracvar.analysis import DEFAULT_H_GRID, hurst_sweep
from fracvar.base_functions import Sine, Tent

PANELS = {"left": Tent(5.0), "right": Sine(0.5)}
FIELDS = ["H", "q", "slope", "error", "method", "b", "phi"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--bases", default="2,3,4,5")
    ap.add_argument("--method", default="enumeration", choices=["enumeration", "mc"])
    ap.add_argument("--atoms", type=int, default=1 << 20,
                    help="enumeration support size cap per (b, H)")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    params = {"atoms": args.atoms} if args.method == "enumeration" else {}
    for panel, phi in PANELS.items():
        path = args.out / f"figure1_{panel}.csv"
        failures = 0
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(FIELDS)
            for b in (int(x) for x in args.bases.split(",")):
                for row in hurst_sweep(phi, b, DEFAULT_H_GRID, args.method, **params):
                    failures += row.failure is not None
                    w.writerow([row.H, row.q, row.slope, row.error, row.method, row.b, row.phi])
        print(f"{path}: {failures} failed rows")


if __name__ == "__main__":
    main()
