#!/usr/bin/env python3
"""Monte Carlo estimates of P(u<->v) - P(u<->v') on K_n bunkbeds beyond exact reach."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from dataclasses import dataclass, field

from bunkbed.graph import build_bunkbed, complete_graph
from bunkbed.montecarlo import estimate_difference


@dataclass
class McConfig:
    n_values: list[int] = field(default_factory=lambda: [10, 15, 20, 30])
    p_values: list[float] = field(default_factory=lambda: [0.3, 0.5, 0.6, 0.8])
    samples: int = 200_000
    seed: int = 0
    workers: int = 1


def run(cfg: McConfig) -> list[dict]:
    rows = []
    for n in cfg.n_values:
        g = build_bunkbed(complete_graph(n))
        for p in cfg.p_values:
            t0 = time.perf_counter()
            est = estimate_difference(g, p, 0, 1, cfg.samples, cfg.seed, cfg.workers)
            rows.append(
                dict(n=n, p=p, estimate=est.estimate, stderr=est.stderr, z=est.estimate / est.stderr if est.stderr else "",
                     samples=est.samples, seed=est.seed, seconds=round(time.perf_counter() - t0, 2))
            )
            print(f"n={n} p={p}: {est.estimate:+.3e} +/- {est.stderr:.1e}", file=sys.stderr)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[10, 15, 20, 30])
    ap.add_argument("--p", type=float, nargs="+", default=[0.3, 0.5, 0.6, 0.8])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=int(os.environ.get("BUNKBED_WORKERS", "1")))
    args = ap.parse_args(argv)
    rows = run(McConfig(args.n, args.p, args.samples, args.seed, args.workers))
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)


if __name__ == "__main__":
    main()
