#!/usr/bin/env python3
"""Scan p on a rational grid and report where the exact argument starts to hold.

For each n, two thresholds are printed: the smallest grid p from which the
comparison lemma holds all the way up to p = 1, and the same for the sign of
P(u<->v) - P(u<->v').  Results are exploratory and depend on the grid.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from bunkbed.graph import parse_fraction
from bunkbed.verifier import threshold_search


@dataclass
class ScanConfig:
    n_values: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    step: Fraction = Fraction(1, 50)
    out: str | None = None


def run(cfg: ScanConfig) -> list[dict]:
    rows = []
    for n in cfg.n_values:
        t0 = time.perf_counter()
        res = threshold_search(n, cfg.step)
        for p, lemma_ok, diff in res.table:
            rows.append(dict(n=n, p=str(p), lemma_holds=lemma_ok, difference=str(diff), difference_float=float(diff)))
        print(
            f"n={n}: lemma from {res.lemma_threshold}, difference >= 0 from {res.difference_threshold}"
            f"  [{time.perf_counter() - t0:.1f}s]",
            file=sys.stderr,
        )
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--step", type=parse_fraction, default=Fraction(1, 50))
    ap.add_argument("--out", help="CSV path (default: stdout)")
    args = ap.parse_args(argv)
    rows = run(ScanConfig(args.n, args.step, args.out))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
