"""Three-way comparison grid written to CSV, with a one-line summary per n.

    python scripts/crosscheck_grid.py --n-set 1,2,3,4,5 --m-max 6 --out grid.csv
"""
import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from quartic_lab.cli import CROSSCHECK_COLUMNS
from quartic_lab.evaluate import crosscheck_row


@dataclass
class GridConfig:
    n_set: List[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    m_max: int = 6
    # fractions of the series radius 2/n
    a_scaled: List[Fraction] = field(
        default_factory=lambda: [Fraction(k, 10) for k in (-9, -5, -2, 0, 2, 5, 9)]
    )
    quad_tol: float = 1e-12


def run(cfg: GridConfig):
    rows = []
    for n in cfg.n_set:
        t0 = time.perf_counter()
        block = [
            crosscheck_row(n, n, m, s * Fraction(2, n), cfg.quad_tol)
            for m in range(cfg.m_max + 1)
            for s in cfg.a_scaled
        ]
        worst = max(r["max_rel_dev"] for r in block)
        print(f"n={n}: {len(block)} rows, worst rel dev {worst:.2e}, {time.perf_counter() - t0:.2f} s",
              file=sys.stderr)
        rows.extend(block)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-set", default="1,2,3,4,5")
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    cfg = GridConfig(n_set=[int(t) for t in args.n_set.split(",")], m_max=args.m_max)
    rows = run(cfg)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.DictWriter(fh, fieldnames=CROSSCHECK_COLUMNS)
    w.writeheader()
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
