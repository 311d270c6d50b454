"""Exact signed cubic sums against their limits, n = 1..12.

Covers the three outcomes: a nonzero limit (b=3, l=1), an identically zero
limit (symmetric tent, b=2) and the sign-alternating pair for alpha < 0.
Rows follow the convergence schema n,value,predicted_rate plus the limit.
"""

import argparse
import csv
import math
from pathlib import Path

from fracvar.analysis import SignedKind, signed_variation_limit
from fracvar.base_functions import SkewedTent, Tent
from fracvar.fractal import FractalSpec
from fracvar.variation import signed_partition_sum

CASES = {
    "b3_l1": FractalSpec(SkewedTent(3, 1), 3, 3 ** (-1 / 3)),
    "b2_tent": FractalSpec(Tent(), 2, 2 ** (-1 / 3)),
    "b3_l1_negative": FractalSpec(SkewedTent(3, 1), 3, -(3 ** (-1 / 3))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for label, spec in CASES.items():
        lim = signed_variation_limit(spec)
        # signed sums approach their limit at rate |gamma|**n
        rate = math.log(abs(spec.gamma))
        path = args.out / f"signed_{label}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "value", "predicted_rate", "limit"])
            for n in range(1, args.n_max + 1):
                target = lim.value
                if lim.kind is SignedKind.OSCILLATING_PAIR:
                    target = lim.value_even_n if n % 2 == 0 else lim.value_odd_n
                w.writerow([n, signed_partition_sum(spec, 3, 1, n), n * rate, target])
        print(f"{label}: {lim.kind.value} value={lim.value!r} -> {path}")


if __name__ == "__main__":
    main()
